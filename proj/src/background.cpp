#include "chb/background.hpp"

#include <cmath>
#include <stdexcept>

#include "chb/bounds.hpp"
#include "chb/quadrature.hpp"

namespace chb {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void BackgroundProfile::validate() const {
    params.validate();
    if (!(V >= 0.0) || !std::isfinite(V)) {
        throw std::invalid_argument("BackgroundProfile: V must be >= 0");
    }
    if (!(delta > 0.0) || !(delta < 0.5 * params.h)) {
        throw std::invalid_argument(
            "BackgroundProfile: delta must lie in (0, h/2)");
    }
}

namespace background {

double profile_eval(const BackgroundProfile& bp, double z) {
    bp.validate();
    const double h = bp.params.h;
    if (z < 0.0 || z > h) {
        throw std::invalid_argument("profile_eval: z outside [0,h]");
    }
    if (z <= bp.delta) return bp.V * z / bp.delta;
    if (z >= h - bp.delta) return bp.V * (h - z) / bp.delta;
    return bp.V;
}

double profile_integral(const BackgroundProfile& bp) {
    bp.validate();
    return bp.V * (bp.params.h - bp.delta);
}

double profile_gradient_square_integral(const BackgroundProfile& bp) {
    bp.validate();
    return 2.0 * bp.V * bp.V / bp.delta;
}

double quadratic_form(const BackgroundProfile& bp, const SpectralField& v) {
    bp.validate();
    const ChannelParams& p = v.params();
    if (p.h != bp.params.h) {
        throw std::invalid_argument("quadratic_form: geometry mismatch");
    }
    const FieldOps& ops = *v.ops();
    const double viscous = 0.5 * p.nu * grad_inner(v, v);
    if (bp.V == 0.0) return viscous;

    // b(v, U, v) = int U_1'(z) v1 v3; U_1' is V/delta on [0,delta],
    // -V/delta on [h-delta,h] and zero between, so only the two ramp
    // integrals of g(z) = int v1 v3 dxdy are needed; g is a polynomial,
    // integrated exactly by a per-ramp Gauss-Legendre rule.
    const int ngl = ops.res().nz + 1;
    const auto comps = ops.components(v);
    auto ramp_integral = [&](double a, double b) {
        const QuadratureRule gl = gauss_legendre(ngl, a, b);
        const VectorXd pts = Eigen::Map<const VectorXd>(gl.nodes.data(), ngl);
        const MatrixXd zi = ops.grid().interpolation_to(pts);
        const MatrixXcd c1 = zi.cast<std::complex<double>>() * comps[0];
        const MatrixXcd c3 = zi.cast<std::complex<double>>() * comps[2];
        double total = 0.0;
        for (int jx = 0; jx < ops.res().nx; ++jx) {
            for (int jy = 0; jy < ops.nyh(); ++jy) {
                if (!ops.retained(jx, jy)) continue;
                const int m = ops.mode_id(jx, jy);
                const double wgt = ops.mode_weight(jy);
                for (int i = 0; i < ngl; ++i) {
                    total += wgt * gl.weights[i] *
                             (c1(i, m) * std::conj(c3(i, m))).real();
                }
            }
        }
        return total * p.L_x * p.L_y;
    };

    const double h = p.h;
    const double shear = bp.V / bp.delta *
                         (ramp_integral(0.0, bp.delta) -
                          ramp_integral(h - bp.delta, h));
    return viscous + shear;
}

double constraint_coefficient(double V, double delta, double nu) {
    if (!(V >= 0.0) || !(delta > 0.0) || !(nu > 0.0)) {
        throw std::invalid_argument(
            "constraint_coefficient: need V >= 0, delta > 0, nu > 0");
    }
    return 0.5 * nu - std::sqrt(2.0) * V * delta / (M_PI * M_PI);
}

double poincare_halfslab(double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("poincare_halfslab: delta must be > 0");
    }
    return M_PI * M_PI / (4.0 * delta * delta);
}

double lower_bound_functional(const BackgroundProfile& bp) {
    bp.validate();
    const ChannelParams& p = bp.params;
    return (2.0 / p.h) * (bp.V * (p.h - bp.delta) -
                          p.nu * p.L_x * bp.V * bp.V / (bp.delta * p.P));
}

BackgroundProfile optimal_parameters(const ChannelParams& p) {
    const PressureRegime r = bounds::pressure_regime(p);
    BackgroundProfile bp;
    bp.params = p;
    if (r.regime == Regime::Low) {
        bp.V = p.h * p.h * p.P / (9.0 * p.nu * p.L_x);
        bp.delta = p.h / 3.0;
    } else {
        bp.V = M_PI * std::sqrt(p.h * p.P) /
               (std::sqrt(3.0) * std::pow(2.0, 0.75) * std::sqrt(p.L_x));
        bp.delta = p.nu * M_PI * M_PI / (2.0 * std::sqrt(2.0) * bp.V);
    }
    bp.validate();
    return bp;
}

double paper_printed_delta_high(const ChannelParams& p) {
    p.validate();
    return std::sqrt(3.0) * p.nu * std::sqrt(p.L_x) /
           (std::pow(2.0, 0.75) * std::sqrt(p.h * p.P));
}

ConstraintReport verify_constraint(const BackgroundProfile& bp,
                                   const Resolution& res, int nsamples,
                                   std::uint64_t seed) {
    bp.validate();
    if (nsamples < 1) {
        throw std::invalid_argument("verify_constraint: nsamples must be >= 1");
    }
    ConstraintReport rep;
    rep.coefficient =
        constraint_coefficient(bp.V, bp.delta, bp.params.nu);
    rep.satisfied = rep.coefficient >= 0.0;
    rep.worst_sample_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nsamples; ++i) {
        const SpectralField v =
            random_divfree(bp.params, res, seed + i, -1.0);
        const double hq = quadratic_form(bp, v);
        const double g2 = grad_inner(v, v);
        rep.worst_sample_ratio = std::min(rep.worst_sample_ratio, hq / g2);
    }
    return rep;
}

}  // namespace background

}  // namespace chb
