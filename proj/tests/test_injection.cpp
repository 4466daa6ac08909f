#include "chb/injection.hpp"

#include <cmath>
#include <stdexcept>

#include "chb/poiseuille.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chb;
using namespace chb::injection;
using test::ParamGen;
using test::rel_err;
using test::unit_params;

namespace {
const Resolution kRes{8, 1, 17};
}

TEST_CASE("odd power sums") {
    // sum over odd j of j^-4 = pi^4/96
    const double pi4_96 = 1.01467803160419205;
    CHECK(rel_err(odd_power_tail(4, 1), pi4_96) < 1e-13);
    CHECK(rel_err(odd_power_tail(4, 3), pi4_96 - 1.0) < 1e-11);
    // self-consistency across the partial-sum cut and the 1/(6k^3)
    // asymptotics of the odd tail
    const double t1 = odd_power_tail(4, 1001);
    double head = 0.0;
    for (long long j = 1001; j < 9001; j += 2) head += std::pow(double(j), -4);
    CHECK(rel_err(t1, head + odd_power_tail(4, 9001)) < 1e-13);
    const double t2 = odd_power_tail(4, 100001);
    CHECK(rel_err(t2, 1.0 / (6.0 * std::pow(100001.0, 3))) < 1e-4);
    CHECK_THROWS_AS(odd_power_tail(1, 1), std::invalid_argument);
}

TEST_CASE("forcing mode norms") {
    const ChannelParams p = unit_params();
    // k = 1: 2/pi and 2 sqrt2/pi
    CHECK(rel_err(forcing_mode_norm_lemma(M_PI, p), 0.636619772367581343) <
          1e-14);
    CHECK(rel_err(forcing_mode_norm_oracle(M_PI, p, 64),
                  0.90031631615710607) < 1e-12);
    // even k carries no forcing
    CHECK(forcing_mode_norm_lemma(2.0 * M_PI, p) == 0.0);
    CHECK(forcing_mode_norm_oracle(2.0 * M_PI, p, 64) < 1e-13);
    // off-spectrum
    CHECK(forcing_mode_norm_lemma(1.5 * M_PI, p) == 0.0);
    CHECK_THROWS_AS(forcing_mode_norm_oracle(1.5 * M_PI, p, 64),
                    std::invalid_argument);

    SUBCASE("oracle/lemma ratio is sqrt2 on every odd mode") {
        ParamGen gen(501);
        const ChannelParams q = gen.next();
        const ForcingSpectrum fs = forcing_spectrum(q, 199);
        REQUIRE(fs.modes.size() == 100);
        for (const auto& m : fs.modes) {
            CHECK(m.k % 2 == 1);
            CHECK(rel_err(m.oracle_norm / m.lemma_norm, std::sqrt(2.0)) <
                  1e-9);
        }
        // spot checks higher up the spectrum
        for (int k : {399, 999}) {
            const double kap = k * M_PI / q.h;
            const double oracle =
                forcing_mode_norm_oracle(kap, q, 2 * k + 24);
            CHECK(rel_err(oracle / forcing_mode_norm_lemma(kap, q),
                          std::sqrt(2.0)) < 1e-8);
        }
    }
}

TEST_CASE("parseval closure of the forcing series") {
    ParamGen gen(502);
    for (int i = 0; i < 20; ++i) {
        const ChannelParams p = gen.next();
        const double target =
            p.L_y * p.h * p.h * p.h * p.P * p.P / (12.0 * p.L_x);
        CHECK(rel_err(forcing_parseval_sum(p, 100000), target) < 1e-10);
        CHECK(rel_err(forcing_parseval_sum(p, 100000, true), 0.5 * target) <
              1e-10);
    }
}

TEST_CASE("shell injection on Poiseuille") {
    const ChannelParams p = unit_params();
    const SpectralField u = poiseuille_field(p, kRes);

    SUBCASE("per-shell closed form 8 P^2 h^2/(nu L_x^2 pi^4 k^4)") {
        for (int k : {1, 3, 5, 7}) {
            const double got = shell_injection(u, k * M_PI / p.h);
            const double want =
                8.0 / (std::pow(M_PI, 4) * std::pow(double(k), 4));
            CHECK(rel_err(got, want) < 1e-12);
        }
    }
    SUBCASE("even and off-spectrum shells vanish") {
        CHECK(shell_injection(u, 2.0 * M_PI) == 0.0);
        CHECK(shell_injection(u, 2.31) == 0.0);
    }
    SUBCASE("record total is the exact energy balance value") {
        const InjectionRecord rec = injection_record(u, 25);
        CHECK(rel_err(rec.total, 1.0 / 12.0) < 1e-13);
        CHECK(rel_err(rec.tail(M_PI / p.h), rec.total) < 1e-15);
        // monotone tail: all Poiseuille shells are positive
        double prev = rec.tail(M_PI / p.h);
        for (int k = 3; k <= 25; k += 2) {
            const double t = rec.tail(k * M_PI / p.h);
            CHECK(t <= prev * (1.0 + 1e-14));
            CHECK(t >= 0.0);
            prev = t;
        }
    }
    SUBCASE("series converges to the total (exact zeta tail)") {
        const InjectionRecord rec = injection_record(u, 399);
        double partial = 0.0;
        for (const auto& [kap, f] : rec.shells) partial += f;
        const double coeff = 8.0 / std::pow(M_PI, 4);
        const double tail = coeff * odd_power_tail(4, 401);
        CHECK(rel_err(partial + tail, rec.total) < 1e-12);
    }
}

TEST_CASE("total injection identity on random fields") {
    // partial sum to K plus the two-term endpoint-derivative tail equals
    // the exact total; the tail uses s_k ~ -(p''(0)-(-1)^k p''(h))/a^3 + ...
    const ChannelParams p = unit_params();
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const SpectralField u = random_divfree(p, kRes, seed, -3.0);
        const InjectionRecord rec = injection_record(u, 2001);
        double partial = 0.0;
        for (const auto& [kap, f] : rec.shells) partial += f;

        const auto& grid = u.ops()->grid();
        const Eigen::VectorXd d2u = grid.diff2() * u.mean_u();
        const Eigen::VectorXd d4u = grid.diff2() * d2u;
        const double c2 = d2u[0] + d2u[kRes.nz - 1];
        const double c4 = d4u[0] + d4u[kRes.nz - 1];
        // F_k = 4 P s_k /(L_x h^2 kappa), kappa = k pi/h, odd k > K
        const double pref = 4.0 * p.P / (p.L_x * p.h * p.h);
        const double tail =
            pref * (-c2 * std::pow(p.h / M_PI, 4) * odd_power_tail(4, 2003) +
                    c4 * std::pow(p.h / M_PI, 6) * odd_power_tail(6, 2003));
        const double denom = std::max(std::abs(rec.total), 1e-6);
        CHECK(std::abs(partial + tail - rec.total) < 1e-11 * denom);
    }
}

TEST_CASE("shells vanish for fields orthogonal to the (0,0,k) family") {
    const ChannelParams p = unit_params();
    SpectralField u = random_divfree(p, {16, 8, 17}, 9, -1.5);
    u.mean_u().setZero();
    const InjectionRecord rec = injection_record(u, 15);
    CHECK(rec.total == 0.0);
    for (const auto& [kap, f] : rec.shells) CHECK(std::abs(f) < 1e-15);
}

TEST_CASE("tail force norms") {
    const ChannelParams p = unit_params();
    const TailForceNorm t = tail_force_norm(M_PI, p);
    CHECK(rel_err(t.exact_sq, 1.0 / 12.0) < 1e-12);
    CHECK(rel_err(t.exact_lemma_sq, 1.0 / 24.0) < 1e-12);
    CHECK(rel_err(t.paper_bound_sq, 0.0410639290187373408) < 1e-13);
    CHECK(rel_err(t.corrected_bound_sq, 0.0821278580374746815) < 1e-13);
    CHECK_THROWS_AS(tail_force_norm(0.5 * M_PI, p), std::invalid_argument);

    SUBCASE("closed-form bound holds from k = 3 upward, fails at k = 1") {
        CHECK(t.exact_lemma_sq > t.paper_bound_sq);  // the k=1 defect
        for (int k = 3; k <= 99; k += 2) {
            const TailForceNorm tk = tail_force_norm(k * M_PI / p.h, p);
            CHECK(tk.exact_lemma_sq <= tk.paper_bound_sq * (1.0 + 1e-12));
            CHECK(tk.exact_sq <= tk.corrected_bound_sq * (1.0 + 1e-12));
        }
    }
    SUBCASE("log-log slope of the exact tail is -3") {
        // fit over kappa in [10 pi, 1000 pi]
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int k = 11; k <= 1001; k += 2) {
            const double kap = k * M_PI / p.h;
            const double x = std::log(kap);
            const double y = std::log(tail_force_norm(kap, p).exact_sq);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::abs(slope + 3.0) < 0.05);
    }
}

TEST_CASE("tail bounds") {
    const ChannelParams p = unit_params();
    const double eps_p = poiseuille::quantities(p).eps;
    CHECK(rel_err(tail_bound(M_PI, p, eps_p), 0.058497812650515219) < 1e-12);
    CHECK_THROWS_AS(tail_bound(M_PI, p, -1.0), std::invalid_argument);

    SUBCASE("oracle bound is attained by Poiseuille at kappa_1") {
        const double b = tail_bound_oracle(M_PI, p, eps_p);
        CHECK(rel_err(b, 1.0 / 12.0) < 1e-12);
        // and dominates the actual tail at every shell
        const SpectralField u = poiseuille_field(p, kRes);
        const InjectionRecord rec = injection_record(u, 25);
        for (int k = 1; k <= 25; k += 2) {
            const double kap = k * M_PI / p.h;
            CHECK(rec.tail(kap) <=
                  tail_bound_oracle(kap, p, eps_p) * (1.0 + 1e-11));
        }
    }
}
