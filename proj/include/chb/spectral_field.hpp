#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chb/channel.hpp"
#include "chb/chebyshev.hpp"

namespace chb {

struct Resolution {
    int nx;
    int ny;  ///< 1 is allowed (x-z reduction)
    int nz;

    bool operator==(const Resolution& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz;
    }
    void validate() const;
};

/// Address of one wall-normal eigenfamily: x-wavenumber index j,
/// y-wavenumber index l, wall-normal index k >= 1.
struct ModeIndex {
    int j;
    int l;
    int k;
};

/// Fourier-Chebyshev proxy wavenumber
/// sqrt((2 pi j/L_x)^2 + (2 pi l/L_y)^2 + (k pi/h)^2). On the (0,0,k) family
/// this is the exact Stokes wavenumber; elsewhere it is the documented
/// approximation used for shell cutoffs.
double kappa_proxy(const ModeIndex& m, const ChannelParams& p);

class FieldOps;
using FieldOpsPtr = std::shared_ptr<const FieldOps>;

/// Divergence-free velocity field, Fourier in x,y and Chebyshev collocation
/// in z, stored in the solenoidal wall-normal velocity / wall-normal
/// vorticity parameterization:
///
///   u_hat = (i kx w' - i ky eta)/k^2,  v_hat = (i ky w' + i kx eta)/k^2,
///   w_hat = w,
///
/// so the discrete divergence vanishes identically. The (0,0) Fourier mode
/// is kept as the real mean profiles (U0(z), V0(z), 0). No-slip requires
/// w = w' = 0 and eta = 0 at the walls and zero mean profiles there.
class SpectralField {
  public:
    SpectralField(const ChannelParams& params, const Resolution& res);
    explicit SpectralField(FieldOpsPtr ops);

    const ChannelParams& params() const;
    const Resolution& res() const;
    const FieldOpsPtr& ops() const { return ops_; }

    /// Wall-normal velocity potential, nz x nmodes (r2c mode layout).
    Eigen::MatrixXcd& w() { return w_; }
    const Eigen::MatrixXcd& w() const { return w_; }
    /// Wall-normal vorticity, nz x nmodes.
    Eigen::MatrixXcd& eta() { return eta_; }
    const Eigen::MatrixXcd& eta() const { return eta_; }
    Eigen::VectorXd& mean_u() { return mean_u_; }
    const Eigen::VectorXd& mean_u() const { return mean_u_; }
    Eigen::VectorXd& mean_v() { return mean_v_; }
    const Eigen::VectorXd& mean_v() const { return mean_v_; }

    void set_zero();

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    SpectralField operator+(const SpectralField& o) const;
    SpectralField operator-(const SpectralField& o) const;
    SpectralField operator*(double s) const;

  private:
    FieldOpsPtr ops_;
    Eigen::MatrixXcd w_, eta_;
    Eigen::VectorXd mean_u_, mean_v_;
};

/// Orthogonal splitting of a field into wavenumber bands
/// [kappa_min, c_0), [c_0, c_1), ..., [c_last, inf). The pieces sum to the
/// original field and are mutually orthogonal in both |.|_0 and ||.||.
struct ShellDecomposition {
    std::vector<double> cutoffs;
    std::vector<SpectralField> pieces;
};

/// Shared immutable discretization context: grids, constrained polynomial
/// spaces and their eigenbases, FFT plans. Obtained from a process-wide
/// cache so fields with equal (params, resolution) share one instance.
class FieldOps : public std::enable_shared_from_this<FieldOps> {
  public:
    static FieldOpsPtr make(const ChannelParams& params, const Resolution& res);
    ~FieldOps();
    FieldOps(const FieldOps&) = delete;
    FieldOps& operator=(const FieldOps&) = delete;

    const ChannelParams& params() const { return params_; }
    const Resolution& res() const { return res_; }
    const ChebyshevGrid& grid() const { return grid_; }
    const DirichletSpace& dirichlet() const { return *dirichlet_; }
    const ClampedSpace& clamped() const { return *clamped_; }

    int nyh() const { return res_.ny / 2 + 1; }
    int nmodes() const { return res_.nx * nyh(); }
    int mode_id(int jx, int jy) const { return jx * nyh() + jy; }
    /// Signed x-wavenumber index for storage row jx.
    int jx_signed(int jx) const {
        return jx <= res_.nx / 2 ? jx : jx - res_.nx;
    }
    double kx(int jx) const { return 2.0 * M_PI * jx_signed(jx) / params_.L_x; }
    double ky(int jy) const { return 2.0 * M_PI * jy / params_.L_y; }
    /// True for modes evolved/stored (Nyquist rows and columns are not).
    bool retained(int jx, int jy) const;
    /// Parseval weight of a stored column (2 for jy > 0 conjugate pairs).
    double mode_weight(int jy) const { return jy == 0 ? 1.0 : 2.0; }

    /// Per-mode discrete eigenbasis of the wall-normal velocity family for
    /// tangential wavenumber squared k2; diagonalizes both field norms.
    struct WallModes {
        Eigen::VectorXd lambda;    ///< ascending; >= continuum counterparts
        Eigen::MatrixXd modes;     ///< basis-coordinate eigenvectors
        Eigen::MatrixXd project;   ///< eigen-coefficients from coordinates
    };
    const WallModes& wall_modes(double k2) const;

    /// Velocity components as per-mode nodal spectra (nz x nmodes), mean
    /// profiles folded into the (0,0) column.
    std::array<Eigen::MatrixXcd, 3> components(const SpectralField& f) const;

    /// Physical-space synthesis of per-mode component data onto z-levels
    /// given by zinterp (rows) and a padded px x py grid; result is
    /// level-major: out[l*px*py + ix*py + iy].
    void synthesize(const Eigen::MatrixXcd& comp, const Eigen::MatrixXd& zinterp,
                    int px, int py, std::vector<double>& out) const;

    /// Inverse of synthesize: r2c transforms of level-major physical data,
    /// gathering the retained modes (normalized by px*py) into an
    /// nlevels x nmodes matrix. Truncation to the retained modes is the 3/2
    /// dealiasing step in x,y.
    void analyze(const std::vector<double>& phys, int px, int py, int nlevels,
                 Eigen::MatrixXcd& out) const;

    struct Workspace;  // FFT plan cache

  private:
    FieldOps(const ChannelParams& params, const Resolution& res);

    ChannelParams params_;
    Resolution res_;
    ChebyshevGrid grid_;
    std::unique_ptr<DirichletSpace> dirichlet_;
    std::unique_ptr<ClampedSpace> clamped_;
    std::unique_ptr<Workspace> ws_;
};

double l2_norm(const SpectralField& f);
double grad_norm(const SpectralField& f);
double l2_inner(const SpectralField& f, const SpectralField& g);
double grad_inner(const SpectralField& f, const SpectralField& g);

/// Energy norm of the discrete divergence (zero to round-off by
/// construction; exposed for the invariant tests).
double divergence_norm(const SpectralField& f);

/// L2 norm of d(component comp)/d(direction dir), comp,dir in {0,1,2}.
double component_derivative_norm(const SpectralField& f, int comp, int dir);

/// Mean longitudinal velocity U(f) = (1/|Omega|) int u_1.
double mean_velocity(const SpectralField& f);

/// Forcing inner product (f_P, u) = (P/L_x) int u_1.
double forcing_inner(const SpectralField& f);

/// Galerkin projection onto modes with proxy wavenumber < kappa.
SpectralField galerkin_project(const SpectralField& f, double kappa);

ShellDecomposition shell_decompose(const SpectralField& f,
                                   const std::vector<double>& cutoffs);

/// Trilinear form b(u,v,w) = int (u . grad v) . w, pseudo-spectral; with
/// dealias the x,y products are evaluated on 3/2-padded grids and the
/// z-quadrature is exact for the cubic integrand, so the orthogonality
/// b(u,v,v) = 0 holds to round-off. dealias=false is the aliased negative
/// control. Throws on resolution/parameter mismatch.
double trilinear(const SpectralField& u, const SpectralField& v,
                 const SpectralField& w, bool dealias = true);

/// Deterministic solenoidal test-field generator; coefficients are drawn
/// per eigenfamily with amplitude kappa^spectrum_slope and the result is
/// normalized to |f|_0 = 1.
SpectralField random_divfree(const ChannelParams& params, const Resolution& res,
                             std::uint64_t seed, double spectrum_slope);

/// Discretized plane Poiseuille flow (exact: the profile is quadratic).
SpectralField poiseuille_field(const ChannelParams& params,
                               const Resolution& res);

/// Maximum |u_i| on the collocation grid, for CFL estimates and diagnostics.
std::array<double, 3> max_abs_components(const SpectralField& f);

/// Binary snapshot I/O (format documented in docs/formats.md).
void save_snapshot(const std::string& path, const SpectralField& f);
SpectralField load_snapshot(const std::string& path);
void write_snapshot(std::ostream& os, const SpectralField& f);
SpectralField read_snapshot(std::istream& is);

}  // namespace chb
