#pragma once

#include <vector>

#include "chb/channel.hpp"
#include "chb/spectral_field.hpp"

namespace chb {

/// Forcing projections onto the (0,0,k) wall-normal eigenfamilies, which is
/// where the whole pressure-gradient forcing lives (it projects to zero on
/// every (j,l) != (0,0) family). Two conventions are carried side by side:
/// lemma_norm projects onto the single unit vector
/// (sin, sin, 0)/sqrt(L_x L_y h); oracle_norm projects onto the full
/// two-dimensional eigenspace and exceeds it by exactly sqrt(2). Only the
/// oracle convention closes the Parseval sum to |A^{-1/2} f_P|_0^2.
struct ForcingSpectrum {
    ChannelParams params;
    struct Mode {
        int k;               ///< odd wall-normal index
        double kappa;        ///< k pi / h
        double lemma_norm;   ///< 2 L_y^{1/2} P / (L_x^{1/2} h^{1/2} kappa)
        double oracle_norm;  ///< sqrt(2) times lemma_norm (by quadrature)
    };
    std::vector<Mode> modes;
};

/// Scale-by-scale energy injection of one velocity field. Shells live on
/// the odd (0,0,k) spectrum; `total` is the exact (f_P, u)/(L_x L_y h), and
/// tails are formed as total minus the finite partial sum below kappa, so
/// tail(kappa_1) = total holds identically.
struct InjectionRecord {
    std::vector<std::pair<double, double>> shells;  ///< (kappa, F_kappa)
    double total;

    /// F_{kappa, inf}: total minus all shells strictly below kappa.
    double tail(double kappa) const;
};

/// Exact and closed-form bounds for the tail force norm
/// |A^{-1/2} (f_P)_{kappa,inf}|_0^2.
struct TailForceNorm {
    double exact_sq;           ///< oracle convention, exact odd series
    double exact_lemma_sq;     ///< lemma convention (exactly half)
    double paper_bound_sq;     ///< 4 L_y P^2 / (pi L_x kappa^3)
    double corrected_bound_sq; ///< oracle convention, twice paper_bound_sq
};

namespace injection {

/// Lemma closed form: 2 L_y^{1/2} P/(L_x^{1/2} h^{1/2} kappa) on odd
/// kappa = k pi/h, zero otherwise (even k or off-spectrum).
double forcing_mode_norm_lemma(double kappa, const ChannelParams& p);

/// Full-eigenspace projection norm computed by Gauss-Legendre quadrature of
/// the forcing against the normalized eigenfunctions. Requires kappa on the
/// (0,0,k) spectrum; quad_points must resolve sin(k pi z/h) (use >= 2k+16).
double forcing_mode_norm_oracle(double kappa, const ChannelParams& p,
                                int quad_points);

/// Both conventions for all odd k <= kmax, oracle values by quadrature.
ForcingSpectrum forcing_spectrum(const ChannelParams& p, int kmax);

/// sin-coefficient integral int_0^h U0(z) sin(k pi z/h) dz of the mean
/// longitudinal profile, by quadrature exact for the polynomial integrand.
double sine_coefficient_integral(const SpectralField& u, int k);

/// F_kappa(u) = ((f_P)_kappa, u_kappa)/(L_x L_y h); zero on even or
/// off-spectrum kappa.
double shell_injection(const SpectralField& u, double kappa);

/// Shells for k = 1..kmax (odd entries only) plus the exact total.
InjectionRecord injection_record(const SpectralField& u, int kmax);

/// Exact tail force norms and the closed-form kappa^{-3} bounds.
/// Requires kappa >= kappa_1 = pi/h.
TailForceNorm tail_force_norm(double kappa, const ChannelParams& p);

/// Paper closed form kappa^{-3/2} (2P/(pi^{1/2} nu^{1/2} L_x h^{1/2}))
/// sqrt(eps).
double tail_bound(double kappa, const ChannelParams& p, double eps);

/// Rigorous oracle-convention tail bound
/// sqrt(exact tail norm^2) * sqrt(eps/(nu L_x L_y h)); valid at every
/// kappa and attained by Poiseuille at kappa_1.
double tail_bound_oracle(double kappa, const ChannelParams& p, double eps);

/// Oracle-convention Parseval sum sum_k |(f_P)_k|^2/kappa_k^2, partial to
/// kmax plus the analytic odd-series tail; equals L_y h^3 P^2/(12 L_x).
/// With lemma_convention the result is exactly half.
double forcing_parseval_sum(const ChannelParams& p, long long kmax,
                            bool lemma_convention = false);

/// sum over odd j >= kmin of j^-m (m >= 2), exact odd-zeta series.
double odd_power_tail(int m, long long kmin);

}  // namespace injection

}  // namespace chb
