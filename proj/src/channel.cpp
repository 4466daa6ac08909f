#include "chb/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chb {

namespace {
void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("ChannelParams: ") + name +
                                    " must be positive and finite");
    }
}
}  // namespace

void ChannelParams::validate() const {
    require_positive(L_x, "L_x");
    require_positive(L_y, "L_y");
    require_positive(h, "h");
    require_positive(nu, "nu");
    require_positive(P, "P");
}

DerivedNumbers derived_numbers(const ChannelParams& p) {
    p.validate();
    DerivedNumbers d;
    d.kappa1 = M_PI / p.h;
    d.lambda1 = d.kappa1 * d.kappa1;
    d.kappa0 = 1.0 / p.h;
    d.grashof = grashof(p);
    return d;
}

double grashof(const ChannelParams& p) {
    p.validate();
    return std::sqrt(3.0) * std::sqrt(p.L_y) * p.h * p.h * p.P /
           (6.0 * std::sqrt(M_PI) * p.nu * p.nu * std::sqrt(p.L_x));
}

double attractor_energy_bound(const ChannelParams& p) {
    p.validate();
    const double h5 = p.h * p.h * p.h * p.h * p.h;
    return p.L_y * h5 * p.P * p.P / (12.0 * M_PI * M_PI * p.nu * p.nu * p.L_x);
}

double skin_friction(double U, const ChannelParams& p) {
    p.validate();
    if (!(U > 0.0)) {
        throw std::invalid_argument("skin_friction: U must be positive");
    }
    return p.P * p.h / (p.L_x * U * U);
}

double reynolds(double U, const ChannelParams& p) {
    p.validate();
    if (U < 0.0) {
        throw std::invalid_argument("reynolds: U must be nonnegative");
    }
    return U * p.h / p.nu;
}

FlowDiagnostics flow_diagnostics(double U, double e, double eps,
                                 const ChannelParams& p) {
    p.validate();
    FlowDiagnostics d;
    d.U = U;
    d.e = e;
    d.eps = eps;
    d.Re = U * p.h / p.nu;
    d.Cf = U > 0.0 ? skin_friction(U, p)
                   : std::numeric_limits<double>::quiet_NaN();
    return d;
}

}  // namespace chb
