#pragma once

#include "chb/channel.hpp"

namespace chb {

enum class Regime { Low, High };

/// Pressure regime split at P* = 27 sqrt(2) pi^2 nu^2 L_x / (4 h^3).
/// P = P* belongs to the Low branch; the two branches coincide there.
struct PressureRegime {
    double threshold_P;
    Regime regime;
};

/// Every closed-form bound evaluated for one parameter set. The skin
/// friction bounds and the Kolmogorov coefficient depend on a Reynolds
/// number, supplied to bounds_report() by the caller.
struct BoundsReport {
    double u_upper;
    double u_lower;
    double cf_lower;
    double cf_upper;
    double eps_lower;
    double eps_upper;
    double e_upper;
    double e_lower;
    double kolmogorov_coeff;
    PressureRegime regime;
};

namespace bounds {

PressureRegime pressure_regime(const ChannelParams& p);

/// U <= sqrt(3) h^2 P / (6 pi nu L_x).
double mean_velocity_upper(const ChannelParams& p);

/// Low branch: U >= (2/27) h^2 P / (nu L_x).
/// High branch: U >= 2^{5/4} pi / 3^{3/2} (h/L_x)^{1/2} P^{1/2}
///                   - sqrt(2) pi^2 nu / (2h), clamped at zero.
/// The branches agree at P = P*.
double mean_velocity_lower(const ChannelParams& p);

/// C_f >= 2 pi sqrt(3) / Re. Requires Re > 0.
double cf_lower(double Re);

/// Low branch: C_f <= 27/(2 Re).
/// High branch: C_f <= 27 sqrt(2)/(8 pi^2) (1 + sqrt(2) pi^2/(2 Re))^2.
/// Requires Re > 0; the branch is chosen from p.
double cf_upper(const ChannelParams& p, double Re);

/// eps >= (P/L_x) * mean_velocity_lower(p). Equals the Low-branch closed
/// form (2/27) h^2 P^2/(nu L_x^2) exactly, and keeps the two branches
/// continuous at P = P*.
double dissipation_lower(const ChannelParams& p);

/// eps <= sqrt(3) h^2 P^2 / (6 pi nu L_x^2) = mean_velocity_upper * P/L_x.
double dissipation_upper(const ChannelParams& p);

/// eps <= U P / L_x (energy balance bound; equality at Poiseuille).
double dissipation_pressure_bound(double U, const ChannelParams& p);

/// c(Re) = 3/(2^{5/2} pi^2) + 27 pi/(4 Re) + 27 pi^2/(2^{7/2} Re^2),
/// the coefficient in eps <= c(Re) U^3 / h. Requires Re > 0.
double kolmogorov_coefficient(double Re);

/// e <= h^4 P^2 / (24 pi^2 nu^2 L_x^2).
double energy_upper(const ChannelParams& p);

/// Exact root of the quadratic chain: with a = h/4, b = nu (L_x L_y h)^{1/2},
/// c = L_y h^3 P / 12 and r* = 2c / (b + sqrt(b^2 + 4ac)), returns
/// e >= r*^2 / (2 L_x L_y h). Asymptotically h P/(6 L_x) for large P.
double energy_lower(const ChannelParams& p);

/// Diagnostic: the High-branch subtraction term obtained from the
/// constraint-saturating background profile, sqrt(2) pi^2 nu/(2h); this is
/// the term that enters mean_velocity_lower.
double high_branch_subtraction_term(const ChannelParams& p);

BoundsReport bounds_report(const ChannelParams& p, double Re);

}  // namespace bounds

}  // namespace chb
