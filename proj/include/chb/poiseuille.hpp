#pragma once

#include "chb/channel.hpp"

namespace chb {

/// Characteristic quantities of the plane Poiseuille flow
/// u(x,y,z) = P z(h-z)/(2 nu L_x) e_1, the exact steady solution.
///
/// Exact identities: Cf * Re = 12, eps = U P / L_x (steady energy balance),
/// e = energy_total / (2 L_x L_y h).
struct PoiseuilleQuantities {
    double U;
    double e;
    double eps;
    double Re;
    double Cf;
    double enstrophy_total;  ///< ||u||^2
    double energy_total;     ///< |u|_0^2
};

namespace poiseuille {

/// Velocity profile P z(h-z)/(2 nu L_x). Requires 0 <= z <= h.
double profile(double z, const ChannelParams& p);

/// d(profile)/dz = P (h-2z)/(2 nu L_x). Requires 0 <= z <= h.
double profile_derivative(double z, const ChannelParams& p);

/// Closed forms: U = P h^2/(12 nu L_x), e = h^4 P^2/(240 nu^2 L_x^2),
/// eps = h^2 P^2/(12 nu L_x^2), Re = P h^3/(12 nu^2 L_x), Cf = 12/Re.
PoiseuilleQuantities quantities(const ChannelParams& p);

/// Same quantities via Gauss-Legendre quadrature of the defining integrals
/// over the analytic profile; exact for n_points >= 3, so it agrees with
/// quantities() to round-off. Requires n_points >= 4.
PoiseuilleQuantities quadrature_quantities(const ChannelParams& p,
                                           int n_points);

}  // namespace poiseuille

}  // namespace chb
