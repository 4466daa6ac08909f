#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chb/channel.hpp"
#include "chb/spectral_field.hpp"

namespace chb {

/// Raw (not divergence-free) vector field in the same Fourier x Chebyshev
/// layout as SpectralField components; used for forcings and for the
/// time-averaged advection term. comps[i] is nz x nmodes with the (0,0)
/// column holding the real mean profile.
struct ForcingField {
    FieldOpsPtr ops;
    std::array<Eigen::MatrixXcd, 3> comps;

    explicit ForcingField(FieldOpsPtr o);
    ForcingField& operator+=(const ForcingField& other);
    ForcingField& operator*=(double s);
};

/// The pressure-gradient forcing f_P = (P/L_x) e_1 on the given grid.
ForcingField pressure_forcing(const FieldOpsPtr& ops);

enum class Integrator {
    SemiImplicitOrder1,  ///< backward-Euler viscous + explicit advection
    SemiImplicitOrder2,  ///< Crank-Nicolson viscous + Adams-Bashforth 2
};

struct InitialCondition {
    enum class Kind { Poiseuille, PerturbedPoiseuille, Zero, FromFile };
    Kind kind = Kind::Poiseuille;
    double amplitude = 1e-3;  ///< relative L2 size of the perturbation
    std::uint64_t seed = 0;
    std::string path;  ///< snapshot or restart file for FromFile
};

struct SimulationConfig {
    ChannelParams params;
    Resolution resolution;
    double dt = 0.0;
    double t_end = 0.0;
    double transient_skip = -1.0;  ///< averaging starts here; <0 = 5 h^2/nu
    Integrator integrator = Integrator::SemiImplicitOrder2;
    bool dealias = true;
    bool forcing_enabled = true;  ///< false: free decay (P kept for scales)
    InitialCondition init;
    int output_stride = 1;
    int shell_kmax = 15;  ///< odd injection shells tracked in the averages
    double cfl_limit = 0.5;

    void validate() const;
};

/// Finite-time averages over [transient_skip, t_end].
struct AveragesRecord {
    double T = 0.0;
    double U_T = 0.0;
    double energy_avg = 0.0;     ///< <|u|_0^2>_T
    double enstrophy_avg = 0.0;  ///< <||u||^2>_T
    double injection_avg = 0.0;  ///< <(f_P,u)>_T / (L_x L_y h)
    std::vector<std::pair<double, double>> shells_avg;  ///< (kappa, <F_k>_T)
    double budget_residual = 0.0;  ///< window mean of the per-step residual
    double energy_start = 0.0;     ///< |u|_0^2 entering the window
    double energy_end = 0.0;       ///< |u|_0^2 at t_end
};

struct TimeSample {
    double t;
    double U;
    double energy;
    double enstrophy;
    double injection;
    double budget_residual;
};

/// Time averages of the mean field and of the advection term (u.grad)u,
/// accumulated over the same window.
struct TimeAveragedPair {
    SpectralField field;
    ForcingField advection;
    double window = 0.0;

    TimeAveragedPair(FieldOpsPtr ops)
        : field(ops), advection(std::move(ops)) {}
};

struct RunResult {
    SpectralField final_state;
    AveragesRecord averages;
    std::vector<TimeSample> series;
    TimeAveragedPair averaged;
    int steps = 0;
    double max_cfl = 0.0;
};

/// Thrown when the step detects NaNs or a CFL blow-up.
class SimulationDivergedError : public std::runtime_error {
  public:
    SimulationDivergedError(const std::string& what, int step)
        : std::runtime_error(what), step_(step) {}
    int step() const { return step_; }

  private:
    int step_;
};

/// Semi-implicit pseudo-spectral channel solver in the wall-normal
/// velocity / wall-normal vorticity formulation: Fourier in x,y, Chebyshev
/// collocation in z, implicit viscous terms per mode (Helmholtz solves with
/// an influence-matrix correction for the fourth-order w system), explicit
/// dealiased advection, and the constant forcing P/L_x applied exactly in
/// the mean-mode solve.
class Simulation {
  public:
    explicit Simulation(const SimulationConfig& cfg);
    ~Simulation();
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    void step();
    const SpectralField& state() const { return state_; }
    SpectralField& state() { return state_; }
    double time() const { return time_; }
    int steps_taken() const { return steps_; }
    double last_cfl() const { return last_cfl_; }

    /// Advection term (u.grad)u of the current state (dealiased).
    ForcingField advection_term() const;

    const SimulationConfig& config() const { return cfg_; }
    const FieldOpsPtr& ops() const { return ops_; }

    void save_restart(const std::string& path) const;
    void load_restart(const std::string& path);

  private:
    struct Impl;
    SimulationConfig cfg_;
    FieldOpsPtr ops_;
    SpectralField state_;
    double time_ = 0.0;
    int steps_ = 0;
    double last_cfl_ = 0.0;
    std::unique_ptr<Impl> impl_;
};

/// Runs the configured simulation and accumulates window averages.
RunResult run(const SimulationConfig& cfg);

/// Solves nu A u = f for the divergence-free field u (A is the Stokes
/// operator; the Leray projection of f is implicit in the reduction).
/// Rejects forcings with a mean vertical component, which the channel
/// constraint cannot carry.
SpectralField stokes_inverse(const ForcingField& f, double nu);

/// Dual-norm residual |A^{-1/2}(nu A <u> + <B(u,u)> - f_P)|_0 of the
/// stationary Reynolds equation, evaluated as nu * || A^{-1}(...) ||.
/// Throws if the two averages come from different windows.
double reynolds_residual(const SpectralField& mean_field,
                         const ForcingField& mean_advection,
                         double window_field, double window_advection);
double reynolds_residual(const TimeAveragedPair& averaged);

}  // namespace chb
