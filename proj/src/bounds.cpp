#include "chb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chb::bounds {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
// 2^{5/4} pi / 3^{3/2}, leading coefficient of the High-branch velocity bound
const double kHighLead = std::pow(2.0, 1.25) * M_PI / std::pow(3.0, 1.5);

void check_re(double Re) {
    if (!(Re > 0.0)) {
        throw std::invalid_argument("bounds: Re must be positive");
    }
}
}  // namespace

PressureRegime pressure_regime(const ChannelParams& p) {
    p.validate();
    PressureRegime r;
    r.threshold_P = 27.0 * kSqrt2 * M_PI * M_PI * p.nu * p.nu * p.L_x /
                    (4.0 * p.h * p.h * p.h);
    r.regime = p.P <= r.threshold_P ? Regime::Low : Regime::High;
    return r;
}

double mean_velocity_upper(const ChannelParams& p) {
    p.validate();
    return kSqrt3 * p.h * p.h * p.P / (6.0 * M_PI * p.nu * p.L_x);
}

double high_branch_subtraction_term(const ChannelParams& p) {
    return kSqrt2 * M_PI * M_PI * p.nu / (2.0 * p.h);
}

double mean_velocity_lower(const ChannelParams& p) {
    const PressureRegime r = pressure_regime(p);
    if (r.regime == Regime::Low) {
        return (2.0 / 27.0) * p.h * p.h * p.P / (p.nu * p.L_x);
    }
    const double lead = kHighLead * std::sqrt(p.h / p.L_x) * std::sqrt(p.P);
    return std::max(0.0, lead - high_branch_subtraction_term(p));
}

double cf_lower(double Re) {
    check_re(Re);
    return 2.0 * M_PI * kSqrt3 / Re;
}

double cf_upper(const ChannelParams& p, double Re) {
    check_re(Re);
    const PressureRegime r = pressure_regime(p);
    if (r.regime == Regime::Low) {
        return 13.5 / Re;
    }
    const double t = 1.0 + kSqrt2 * M_PI * M_PI / (2.0 * Re);
    return 27.0 * kSqrt2 / (8.0 * M_PI * M_PI) * t * t;
}

double dissipation_lower(const ChannelParams& p) {
    return mean_velocity_lower(p) * p.P / p.L_x;
}

double dissipation_upper(const ChannelParams& p) {
    return mean_velocity_upper(p) * p.P / p.L_x;
}

double dissipation_pressure_bound(double U, const ChannelParams& p) {
    p.validate();
    if (U < 0.0) {
        throw std::invalid_argument(
            "dissipation_pressure_bound: U must be nonnegative");
    }
    return U * p.P / p.L_x;
}

double kolmogorov_coefficient(double Re) {
    check_re(Re);
    return 3.0 / (std::pow(2.0, 2.5) * M_PI * M_PI) +
           27.0 * M_PI / (4.0 * Re) +
           27.0 * M_PI * M_PI / (std::pow(2.0, 3.5) * Re * Re);
}

double energy_upper(const ChannelParams& p) {
    p.validate();
    const double h2 = p.h * p.h;
    return h2 * h2 * p.P * p.P /
           (24.0 * M_PI * M_PI * p.nu * p.nu * p.L_x * p.L_x);
}

double energy_lower(const ChannelParams& p) {
    p.validate();
    const double a = p.h / 4.0;
    const double b = p.nu * std::sqrt(p.volume());
    const double c = p.L_y * p.h * p.h * p.h * p.P / 12.0;
    // r* = (-b + sqrt(b^2+4ac))/(2a), rationalized so small c does not cancel
    const double r = 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
    return r * r / (2.0 * p.volume());
}

BoundsReport bounds_report(const ChannelParams& p, double Re) {
    check_re(Re);
    BoundsReport rep;
    rep.regime = pressure_regime(p);
    rep.u_upper = mean_velocity_upper(p);
    rep.u_lower = mean_velocity_lower(p);
    rep.cf_lower = cf_lower(Re);
    rep.cf_upper = cf_upper(p, Re);
    rep.eps_lower = dissipation_lower(p);
    rep.eps_upper = dissipation_upper(p);
    rep.e_upper = energy_upper(p);
    rep.e_lower = energy_lower(p);
    rep.kolmogorov_coeff = kolmogorov_coefficient(Re);
    return rep;
}

}  // namespace chb::bounds
