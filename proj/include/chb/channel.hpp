#pragma once

namespace chb {

/// Channel geometry and forcing.
///
/// The domain is (0,L_x) x (0,L_y) x (0,h), periodic in x and y, no-slip at
/// z = 0 and z = h, driven by the uniform body force f_P = (P/L_x) e_1.
/// All quantities are kinematic (pressure already divided by density):
/// [nu] = length^2/time, [P] = length^2/time^2.
struct ChannelParams {
    double L_x;  ///< period in the longitudinal direction
    double L_y;  ///< period in the spanwise direction
    double h;    ///< channel height
    double nu;   ///< kinematic viscosity
    double P;    ///< kinematic pressure drop over one x-period

    double volume() const { return L_x * L_y * h; }

    /// Throws std::invalid_argument unless all five fields are positive
    /// and finite.
    void validate() const;
};

/// Nondimensional numbers and spectral constants derived from the geometry.
struct DerivedNumbers {
    double lambda1;  ///< pi^2/h^2, smallest Stokes eigenvalue
    double kappa1;   ///< pi/h, smallest wavenumber (= sqrt(lambda1))
    double kappa0;   ///< 1/h, macroscale characteristic wavenumber
    double grashof;  ///< nondimensional forcing magnitude G*
};

DerivedNumbers derived_numbers(const ChannelParams& p);

/// Global characteristic quantities of a single flow state or average.
struct FlowDiagnostics {
    double U;    ///< mean longitudinal velocity
    double e;    ///< mean kinetic energy per unit mass
    double eps;  ///< mean energy dissipation rate per unit mass
    double Re;   ///< U h / nu
    double Cf;   ///< P h / (L_x U^2)
};

/// Builds the diagnostics record; Re and Cf are filled from U
/// (Cf is NaN when U <= 0).
FlowDiagnostics flow_diagnostics(double U, double e, double eps,
                                 const ChannelParams& p);

/// Grashof number G* = sqrt(3) L_y^{1/2} h^2 P / (6 pi^{1/2} nu^2 L_x^{1/2}).
///
/// Equivalently h^{1/2} |A^{-1/2} f_P|_0 / (nu^2 pi^{1/2}) with
/// |A^{-1/2} f_P|_0^2 = L_y h^3 P^2 / (12 L_x); the two routes are used as a
/// cross-check in the tests. Evaluated as a product of positive factors, so
/// no cancellation occurs.
double grashof(const ChannelParams& p);

/// Bound on <|u|_0^2> over the weak attractor:
/// nu^2 h G*^2 / pi = L_y h^5 P^2 / (12 pi^2 nu^2 L_x).
double attractor_energy_bound(const ChannelParams& p);

/// Skin friction coefficient C_f = P h / (L_x U^2). Requires U > 0.
double skin_friction(double U, const ChannelParams& p);

/// Reynolds number Re = U h / nu. Requires U >= 0.
double reynolds(double U, const ChannelParams& p);

}  // namespace chb
