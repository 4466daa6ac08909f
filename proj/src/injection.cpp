#include "chb/injection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chb/quadrature.hpp"

namespace chb {

double InjectionRecord::tail(double kappa) const {
    double below = 0.0;
    for (const auto& [kap, f] : shells) {
        if (kap < kappa) below += f;
    }
    return total - below;
}

namespace injection {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// kappa -> wall-normal index if kappa = k pi/h for integer k, else 0
int spectrum_index(double kappa, const ChannelParams& p) {
    if (!(kappa > 0.0)) return 0;
    const double t = kappa * p.h / M_PI;
    const long long k = std::llround(t);
    if (k < 1) return 0;
    if (std::abs(t - static_cast<double>(k)) > 1e-9 * t) return 0;
    return static_cast<int>(k);
}

// zeta(m) by direct summation plus Euler-Maclaurin remainder
double riemann_zeta(int m) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    const long long n = 200;
    double s = 0.0;
    for (long long j = 1; j <= n; ++j) s += std::pow(double(j), -m);
    // Euler-Maclaurin tail from n: int + f(n)/2 correction terms
    const double a = double(n);
    s += std::pow(a, 1.0 - m) / (m - 1.0) - 0.5 * std::pow(a, -double(m)) +
         (m / 12.0) * std::pow(a, -double(m) - 1.0) -
         (m * (m + 1.0) * (m + 2.0) / 720.0) * std::pow(a, -double(m) - 3.0);
    cache[m] = s;
    return s;
}

double odd_power_sum(int m) {
    return (1.0 - std::pow(2.0, -m)) * riemann_zeta(m);
}

}  // namespace

double odd_power_tail(int m, long long kmin) {
    if (m < 2) throw std::invalid_argument("odd_power_tail: m must be >= 2");
    if (kmin < 1) kmin = 1;
    if (kmin % 2 == 0) ++kmin;
    // ascending partial sum, then Euler-Maclaurin on g(t) = (k + 2t)^-m from
    // the cut; summing upward keeps the tiny tail free of cancellation
    double s = 0.0;
    long long j = kmin;
    for (long long t = 0; t < 2000; ++t, j += 2) {
        s += std::pow(double(j), -m);
    }
    const double k = double(j);
    s += std::pow(k, 1.0 - m) / (2.0 * (m - 1.0));  // (1/2) int_k f
    s += 0.5 * std::pow(k, -double(m));             // g(0)/2
    s += (m / 6.0) * std::pow(k, -double(m) - 1.0);
    s -= (m * (m + 1.0) * (m + 2.0) / 90.0) * std::pow(k, -double(m) - 3.0);
    return s;
}

double forcing_mode_norm_lemma(double kappa, const ChannelParams& p) {
    p.validate();
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("forcing_mode_norm_lemma: kappa <= 0");
    }
    const int k = spectrum_index(kappa, p);
    if (k == 0 || k % 2 == 0) return 0.0;
    return 2.0 * std::sqrt(p.L_y) * p.P /
           (std::sqrt(p.L_x) * std::sqrt(p.h) * kappa);
}

double forcing_mode_norm_oracle(double kappa, const ChannelParams& p,
                                int quad_points) {
    p.validate();
    const int k = spectrum_index(kappa, p);
    if (k == 0) {
        throw std::invalid_argument(
            "forcing_mode_norm_oracle: kappa is not on the (0,0,k) spectrum");
    }
    if (quad_points < 4) {
        throw std::invalid_argument(
            "forcing_mode_norm_oracle: quad_points must be >= 4");
    }
    // (f_P, e_1-aligned normalized eigenfunction); the spanwise partner is
    // orthogonal to f_P so the eigenspace projection norm is just |this|.
    const double scale = std::sqrt(2.0 / (p.L_x * p.L_y * p.h));
    const double integral = integrate(
        [&](double z) { return std::sin(k * M_PI * z / p.h); }, quad_points,
        0.0, p.h);
    const double proj = (p.P / p.L_x) * p.L_x * p.L_y * scale * integral;
    return std::abs(proj);
}

ForcingSpectrum forcing_spectrum(const ChannelParams& p, int kmax) {
    p.validate();
    if (kmax < 1) throw std::invalid_argument("forcing_spectrum: kmax < 1");
    ForcingSpectrum fs;
    fs.params = p;
    // one shared rule resolving the fastest mode
    const int npts = 2 * kmax + 24;
    const QuadratureRule gl = gauss_legendre(npts, 0.0, p.h);
    const double scale = std::sqrt(2.0 / (p.L_x * p.L_y * p.h));
    for (int k = 1; k <= kmax; k += 2) {
        double integral = 0.0;
        for (int i = 0; i < npts; ++i) {
            integral += gl.weights[i] * std::sin(k * M_PI * gl.nodes[i] / p.h);
        }
        ForcingSpectrum::Mode m;
        m.k = k;
        m.kappa = k * M_PI / p.h;
        m.lemma_norm = forcing_mode_norm_lemma(m.kappa, p);
        m.oracle_norm = std::abs(p.P * p.L_y * scale * integral);
        fs.modes.push_back(m);
    }
    return fs;
}

double sine_coefficient_integral(const SpectralField& u, int k) {
    if (k < 1) {
        throw std::invalid_argument("sine_coefficient_integral: k must be >= 1");
    }
    const ChannelParams& p = u.params();
    const int nz = u.res().nz;
    // Gauss-Legendre resolves sin(k pi z/h) only once the node count passes
    // ~ e pi k / 8, hence the 1.15 k sizing
    const int npts = (23 * k) / 20 + nz + 24;
    const QuadratureRule gl = gauss_legendre(npts, 0.0, p.h);
    const VectorXd pts = Eigen::Map<const VectorXd>(gl.nodes.data(), npts);
    const VectorXd prof = u.ops()->grid().interpolation_to(pts) * u.mean_u();
    double s = 0.0;
    for (int i = 0; i < npts; ++i) {
        s += gl.weights[i] * prof[i] * std::sin(k * M_PI * gl.nodes[i] / p.h);
    }
    return s;
}

double shell_injection(const SpectralField& u, double kappa) {
    const ChannelParams& p = u.params();
    const int k = spectrum_index(kappa, p);
    if (k == 0 || k % 2 == 0) return 0.0;
    const double s = sine_coefficient_integral(u, k);
    return 4.0 * p.P * s / (p.L_x * p.h * p.h * kappa);
}

InjectionRecord injection_record(const SpectralField& u, int kmax) {
    if (kmax < 1) throw std::invalid_argument("injection_record: kmax < 1");
    const ChannelParams& p = u.params();
    const int nz = u.res().nz;
    InjectionRecord rec;
    rec.total = forcing_inner(u) / p.volume();
    // one rule sized for the fastest mode serves every shell
    const int npts = (23 * kmax) / 20 + nz + 24;
    const QuadratureRule gl = gauss_legendre(npts, 0.0, p.h);
    const VectorXd pts = Eigen::Map<const VectorXd>(gl.nodes.data(), npts);
    const VectorXd prof = u.ops()->grid().interpolation_to(pts) * u.mean_u();
    for (int k = 1; k <= kmax; k += 2) {
        const double kappa = k * M_PI / p.h;
        double s = 0.0;
        for (int i = 0; i < npts; ++i) {
            s += gl.weights[i] * prof[i] *
                 std::sin(k * M_PI * gl.nodes[i] / p.h);
        }
        rec.shells.emplace_back(kappa, 4.0 * p.P * s / (p.L_x * p.h * p.h * kappa));
    }
    return rec;
}

TailForceNorm tail_force_norm(double kappa, const ChannelParams& p) {
    p.validate();
    const double kappa1 = M_PI / p.h;
    if (kappa < kappa1 * (1.0 - 1e-12)) {
        throw std::invalid_argument("tail_force_norm: kappa below kappa_1");
    }
    // smallest odd k with k pi/h >= kappa
    long long k0 = static_cast<long long>(std::ceil(kappa * p.h / M_PI - 1e-9));
    if (k0 < 1) k0 = 1;
    if (k0 % 2 == 0) ++k0;
    const double h3 = p.h * p.h * p.h;
    const double pi4 = M_PI * M_PI * M_PI * M_PI;
    TailForceNorm t;
    t.exact_sq =
        8.0 * p.L_y * h3 * p.P * p.P / (pi4 * p.L_x) * odd_power_tail(4, k0);
    t.exact_lemma_sq = 0.5 * t.exact_sq;
    t.paper_bound_sq =
        4.0 * p.L_y * p.P * p.P / (M_PI * p.L_x * kappa * kappa * kappa);
    t.corrected_bound_sq = 2.0 * t.paper_bound_sq;
    return t;
}

double tail_bound(double kappa, const ChannelParams& p, double eps) {
    p.validate();
    if (kappa < M_PI / p.h * (1.0 - 1e-12)) {
        throw std::invalid_argument("tail_bound: kappa below kappa_1");
    }
    if (eps < 0.0) throw std::invalid_argument("tail_bound: eps < 0");
    return std::pow(kappa, -1.5) * 2.0 * p.P /
           (std::sqrt(M_PI) * std::sqrt(p.nu) * p.L_x * std::sqrt(p.h)) *
           std::sqrt(eps);
}

double tail_bound_oracle(double kappa, const ChannelParams& p, double eps) {
    if (eps < 0.0) throw std::invalid_argument("tail_bound_oracle: eps < 0");
    const TailForceNorm t = tail_force_norm(kappa, p);
    return std::sqrt(t.exact_sq) * std::sqrt(eps / (p.nu * p.volume()));
}

double forcing_parseval_sum(const ChannelParams& p, long long kmax,
                            bool lemma_convention) {
    p.validate();
    if (kmax < 1) throw std::invalid_argument("forcing_parseval_sum: kmax < 1");
    // |(f_P)_k|^2/kappa^2 = 8 L_y h^3 P^2/(pi^4 L_x) k^-4 (oracle convention)
    const double coeff = 8.0 * p.L_y * p.h * p.h * p.h * p.P * p.P /
                         (M_PI * M_PI * M_PI * M_PI * p.L_x);
    double partial = 0.0;
    for (long long k = 1; k <= kmax; k += 2) {
        partial += std::pow(double(k), -4);
    }
    const double sum = coeff * (partial + odd_power_tail(4, kmax + 2));
    return lemma_convention ? 0.5 * sum : sum;
}

}  // namespace injection
}  // namespace chb
