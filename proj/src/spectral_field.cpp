#include "chb/spectral_field.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "chb/poiseuille.hpp"
#include "chb/quadrature.hpp"

namespace chb {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

void Resolution::validate() const {
    if (nx < 4 || nx % 2 != 0) {
        throw std::invalid_argument("Resolution: nx must be even and >= 4");
    }
    if (!(ny == 1 || (ny >= 4 && ny % 2 == 0))) {
        throw std::invalid_argument("Resolution: ny must be 1 or even >= 4");
    }
    if (nz < 9) {
        throw std::invalid_argument("Resolution: nz must be >= 9");
    }
}

double kappa_proxy(const ModeIndex& m, const ChannelParams& p) {
    p.validate();
    if (m.k < 1) throw std::invalid_argument("kappa_proxy: k must be >= 1");
    const double a = 2.0 * M_PI * m.j / p.L_x;
    const double b = 2.0 * M_PI * m.l / p.L_y;
    const double c = m.k * M_PI / p.h;
    return std::sqrt(a * a + b * b + c * c);
}

// ---------------------------------------------------------------------------
// FieldOps
// ---------------------------------------------------------------------------

struct FieldOps::Workspace {
    MatrixXcd dc;  // complex copy of d/dz for mixed products
    mutable std::mutex mu;
    mutable std::map<double, FieldOps::WallModes> wall;
    mutable std::map<std::pair<int, int>, fftw_plan> c2r;
    mutable std::map<std::pair<int, int>, fftw_plan> r2c;

    ~Workspace() {
        for (auto& [k, p] : c2r) fftw_destroy_plan(p);
        for (auto& [k, p] : r2c) fftw_destroy_plan(p);
    }

    fftw_plan plan_c2r(int px, int py) const {
        std::lock_guard<std::mutex> lock(mu);
        auto it = c2r.find({px, py});
        if (it != c2r.end()) return it->second;
        std::vector<cplx> in(static_cast<size_t>(px) * (py / 2 + 1));
        std::vector<double> out(static_cast<size_t>(px) * py);
        fftw_plan p = fftw_plan_dft_c2r_2d(
            px, py, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        c2r[{px, py}] = p;
        return p;
    }

    fftw_plan plan_r2c(int px, int py) const {
        std::lock_guard<std::mutex> lock(mu);
        auto it = r2c.find({px, py});
        if (it != r2c.end()) return it->second;
        std::vector<double> in(static_cast<size_t>(px) * py);
        std::vector<cplx> out(static_cast<size_t>(px) * (py / 2 + 1));
        fftw_plan p = fftw_plan_dft_r2c_2d(
            px, py, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        r2c[{px, py}] = p;
        return p;
    }
};

FieldOps::FieldOps(const ChannelParams& params, const Resolution& res)
    : params_(params), res_(res), grid_(res.nz, params.h) {
    params_.validate();
    res_.validate();
    dirichlet_ = std::make_unique<DirichletSpace>(grid_);
    clamped_ = std::make_unique<ClampedSpace>(grid_);
    ws_ = std::make_unique<Workspace>();
    ws_->dc = grid_.diff().cast<cplx>();
}

FieldOps::~FieldOps() = default;

namespace {
struct OpsKey {
    double v[8];
    bool operator<(const OpsKey& o) const {
        for (int i = 0; i < 8; ++i) {
            if (v[i] < o.v[i]) return true;
            if (v[i] > o.v[i]) return false;
        }
        return false;
    }
};
}  // namespace

FieldOpsPtr FieldOps::make(const ChannelParams& params, const Resolution& res) {
    params.validate();
    res.validate();
    static std::mutex cache_mu;
    static std::map<OpsKey, std::weak_ptr<const FieldOps>> cache;
    OpsKey key{{params.L_x, params.L_y, params.h, params.nu, params.P,
                double(res.nx), double(res.ny), double(res.nz)}};
    std::lock_guard<std::mutex> lock(cache_mu);
    if (auto it = cache.find(key); it != cache.end()) {
        if (auto sp = it->second.lock()) return sp;
    }
    std::shared_ptr<const FieldOps> sp(new FieldOps(params, res));
    cache[key] = sp;
    return sp;
}

bool FieldOps::retained(int jx, int jy) const {
    const int s = jx_signed(jx);
    if (std::abs(s) > res_.nx / 2 - 1) return false;
    if (res_.ny > 1) {
        if (jy > res_.ny / 2 - 1) return false;
    } else {
        if (jy != 0) return false;
    }
    return true;
}

const FieldOps::WallModes& FieldOps::wall_modes(double k2) const {
    std::lock_guard<std::mutex> lock(ws_->mu);
    auto it = ws_->wall.find(k2);
    if (it != ws_->wall.end()) return it->second;

    const ClampedSpace& c = *clamped_;
    const MatrixXd a = c.m2() + 2.0 * k2 * c.m1() + k2 * k2 * c.m0();
    const MatrixXd b = c.m1() + k2 * c.m0();
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(a, b);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("FieldOps: wall-mode eigensolve failed");
    }
    WallModes wm;
    wm.lambda = es.eigenvalues();
    wm.modes = es.eigenvectors();           // b-orthonormal
    wm.project = wm.modes.transpose() * b;  // coordinates -> eigen coeffs
    return ws_->wall.emplace(k2, std::move(wm)).first->second;
}

std::array<MatrixXcd, 3> FieldOps::components(const SpectralField& f) const {
    const int nz = res_.nz;
    const int nm = nmodes();
    std::array<MatrixXcd, 3> c;
    for (auto& m : c) m = MatrixXcd::Zero(nz, nm);

    const MatrixXcd dw = ws_->dc * f.w();
    const cplx iu(0.0, 1.0);
    for (int jx = 0; jx < res_.nx; ++jx) {
        for (int jy = 0; jy < nyh(); ++jy) {
            if (!retained(jx, jy)) continue;
            const int m = mode_id(jx, jy);
            if (jx == 0 && jy == 0) {
                c[0].col(m) = f.mean_u().cast<cplx>();
                c[1].col(m) = f.mean_v().cast<cplx>();
                continue;
            }
            const double a = kx(jx), b = ky(jy);
            const double k2 = a * a + b * b;
            c[0].col(m) = (iu * a * dw.col(m) - iu * b * f.eta().col(m)) / k2;
            c[1].col(m) = (iu * b * dw.col(m) + iu * a * f.eta().col(m)) / k2;
            c[2].col(m) = f.w().col(m);
        }
    }
    return c;
}

void FieldOps::synthesize(const MatrixXcd& comp, const MatrixXd& zinterp,
                          int px, int py, std::vector<double>& out) const {
    const int pyh = py / 2 + 1;
    const int mz = static_cast<int>(zinterp.rows());
    const MatrixXcd zv = zinterp.cast<cplx>() * comp;
    out.assign(static_cast<size_t>(mz) * px * py, 0.0);

    fftw_plan plan = ws_->plan_c2r(px, py);
    std::vector<cplx> spec(static_cast<size_t>(px) * pyh);
    for (int l = 0; l < mz; ++l) {
        std::fill(spec.begin(), spec.end(), cplx(0.0, 0.0));
        for (int jx = 0; jx < res_.nx; ++jx) {
            for (int jy = 0; jy < nyh(); ++jy) {
                if (!retained(jx, jy)) continue;
                const int s = jx_signed(jx);
                const int jxp = s >= 0 ? s : px + s;
                spec[static_cast<size_t>(jxp) * pyh + jy] =
                    zv(l, mode_id(jx, jy));
            }
        }
        fftw_execute_dft_c2r(plan,
                             reinterpret_cast<fftw_complex*>(spec.data()),
                             out.data() + static_cast<size_t>(l) * px * py);
    }
}

void FieldOps::analyze(const std::vector<double>& phys, int px, int py,
                       int nlevels, Eigen::MatrixXcd& out) const {
    const int pyh = py / 2 + 1;
    out = MatrixXcd::Zero(nlevels, nmodes());
    fftw_plan plan = ws_->plan_r2c(px, py);
    std::vector<double> in(static_cast<size_t>(px) * py);
    std::vector<cplx> spec(static_cast<size_t>(px) * pyh);
    const double norm = 1.0 / (static_cast<double>(px) * py);
    for (int l = 0; l < nlevels; ++l) {
        std::copy(phys.begin() + static_cast<size_t>(l) * px * py,
                  phys.begin() + static_cast<size_t>(l + 1) * px * py,
                  in.begin());
        fftw_execute_dft_r2c(plan, in.data(),
                             reinterpret_cast<fftw_complex*>(spec.data()));
        for (int jx = 0; jx < res_.nx; ++jx) {
            for (int jy = 0; jy < nyh(); ++jy) {
                if (!retained(jx, jy)) continue;
                const int s = jx_signed(jx);
                const int jxp = s >= 0 ? s : px + s;
                out(l, mode_id(jx, jy)) =
                    norm * spec[static_cast<size_t>(jxp) * pyh + jy];
            }
        }
    }
}

// ---------------------------------------------------------------------------
// SpectralField
// ---------------------------------------------------------------------------

SpectralField::SpectralField(const ChannelParams& params, const Resolution& res)
    : SpectralField(FieldOps::make(params, res)) {}

SpectralField::SpectralField(FieldOpsPtr ops) : ops_(std::move(ops)) {
    const int nz = ops_->res().nz;
    const int nm = ops_->nmodes();
    w_ = MatrixXcd::Zero(nz, nm);
    eta_ = MatrixXcd::Zero(nz, nm);
    mean_u_ = VectorXd::Zero(nz);
    mean_v_ = VectorXd::Zero(nz);
}

const ChannelParams& SpectralField::params() const { return ops_->params(); }
const Resolution& SpectralField::res() const { return ops_->res(); }

void SpectralField::set_zero() {
    w_.setZero();
    eta_.setZero();
    mean_u_.setZero();
    mean_v_.setZero();
}

namespace {
void check_same(const SpectralField& a, const SpectralField& b) {
    if (!(a.res() == b.res()))
        throw std::invalid_argument("SpectralField: resolution mismatch");
    const ChannelParams &p = a.params(), &q = b.params();
    if (p.L_x != q.L_x || p.L_y != q.L_y || p.h != q.h || p.nu != q.nu ||
        p.P != q.P)
        throw std::invalid_argument("SpectralField: parameter mismatch");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same(*this, o);
    w_ += o.w_;
    eta_ += o.eta_;
    mean_u_ += o.mean_u_;
    mean_v_ += o.mean_v_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same(*this, o);
    w_ -= o.w_;
    eta_ -= o.eta_;
    mean_u_ -= o.mean_u_;
    mean_v_ -= o.mean_v_;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    w_ *= s;
    eta_ *= s;
    mean_u_ *= s;
    mean_v_ *= s;
    return *this;
}

SpectralField SpectralField::operator+(const SpectralField& o) const {
    SpectralField r = *this;
    r += o;
    return r;
}
SpectralField SpectralField::operator-(const SpectralField& o) const {
    SpectralField r = *this;
    r -= o;
    return r;
}
SpectralField SpectralField::operator*(double s) const {
    SpectralField r = *this;
    r *= s;
    return r;
}

// ---------------------------------------------------------------------------
// Norms and inner products
// ---------------------------------------------------------------------------

namespace {

// L_x L_y sum over stored modes of weight * Re(a^H Q b); with grad, the
// gradient form (Da)^H Q (Db) + k^2 a^H Q b instead.
double spectral_sum(const FieldOps& ops, const std::array<MatrixXcd, 3>& a,
                    const std::array<MatrixXcd, 3>& b, bool grad) {
    const MatrixXd& q = ops.grid().mass();
    const MatrixXd& d = ops.grid().diff();
    double total = 0.0;
    for (int jx = 0; jx < ops.res().nx; ++jx) {
        for (int jy = 0; jy < ops.nyh(); ++jy) {
            if (!ops.retained(jx, jy)) continue;
            const int m = ops.mode_id(jx, jy);
            const double wgt = ops.mode_weight(jy);
            const double kx = ops.kx(jx), ky = ops.ky(jy);
            const double k2 = kx * kx + ky * ky;
            for (int c = 0; c < 3; ++c) {
                const VectorXd ar = a[c].col(m).real();
                const VectorXd ai = a[c].col(m).imag();
                const VectorXd br = b[c].col(m).real();
                const VectorXd bi = b[c].col(m).imag();
                if (!grad) {
                    total += wgt * (ar.dot(q * br) + ai.dot(q * bi));
                } else {
                    const VectorXd dar = d * ar, dai = d * ai;
                    const VectorXd dbr = d * br, dbi = d * bi;
                    total += wgt * (dar.dot(q * dbr) + dai.dot(q * dbi));
                    total += wgt * k2 * (ar.dot(q * br) + ai.dot(q * bi));
                }
            }
        }
    }
    return total * ops.params().L_x * ops.params().L_y;
}

}  // namespace

double l2_inner(const SpectralField& f, const SpectralField& g) {
    check_same(f, g);
    const FieldOps& ops = *f.ops();
    return spectral_sum(ops, ops.components(f), ops.components(g), false);
}

double grad_inner(const SpectralField& f, const SpectralField& g) {
    check_same(f, g);
    const FieldOps& ops = *f.ops();
    return spectral_sum(ops, ops.components(f), ops.components(g), true);
}

double l2_norm(const SpectralField& f) {
    return std::sqrt(std::max(0.0, l2_inner(f, f)));
}

double grad_norm(const SpectralField& f) {
    return std::sqrt(std::max(0.0, grad_inner(f, f)));
}

double divergence_norm(const SpectralField& f) {
    const FieldOps& ops = *f.ops();
    const auto c = ops.components(f);
    const MatrixXd& q = ops.grid().mass();
    const MatrixXd& d = ops.grid().diff();
    double total = 0.0;
    for (int jx = 0; jx < ops.res().nx; ++jx) {
        for (int jy = 0; jy < ops.nyh(); ++jy) {
            if (!ops.retained(jx, jy)) continue;
            const int m = ops.mode_id(jx, jy);
            const VectorXd wr = c[2].col(m).real(), wi = c[2].col(m).imag();
            const VectorXd dr = d * wr, di = d * wi;
            const VectorXd rr = dr - ops.kx(jx) * c[0].col(m).imag() -
                                ops.ky(jy) * c[1].col(m).imag();
            const VectorXd ri = di + ops.kx(jx) * c[0].col(m).real() +
                                ops.ky(jy) * c[1].col(m).real();
            total += ops.mode_weight(jy) * (rr.dot(q * rr) + ri.dot(q * ri));
        }
    }
    return std::sqrt(
        std::max(0.0, total * ops.params().L_x * ops.params().L_y));
}

double component_derivative_norm(const SpectralField& f, int comp, int dir) {
    if (comp < 0 || comp > 2 || dir < 0 || dir > 2) {
        throw std::invalid_argument("component_derivative_norm: bad index");
    }
    const FieldOps& ops = *f.ops();
    const auto c = ops.components(f);
    const MatrixXd& q = ops.grid().mass();
    const MatrixXd& d = ops.grid().diff();
    double total = 0.0;
    for (int jx = 0; jx < ops.res().nx; ++jx) {
        for (int jy = 0; jy < ops.nyh(); ++jy) {
            if (!ops.retained(jx, jy)) continue;
            const int m = ops.mode_id(jx, jy);
            const VectorXd ar = c[comp].col(m).real();
            const VectorXd ai = c[comp].col(m).imag();
            VectorXd gr, gi;
            if (dir == 2) {
                gr = d * ar;
                gi = d * ai;
            } else {
                const double kk = dir == 0 ? ops.kx(jx) : ops.ky(jy);
                gr = -kk * ai;
                gi = kk * ar;
            }
            total += ops.mode_weight(jy) * (gr.dot(q * gr) + gi.dot(q * gi));
        }
    }
    return std::sqrt(
        std::max(0.0, total * ops.params().L_x * ops.params().L_y));
}

double mean_velocity(const SpectralField& f) {
    return f.ops()->grid().integrate(f.mean_u()) / f.params().h;
}

double forcing_inner(const SpectralField& f) {
    const ChannelParams& p = f.params();
    return p.P * p.L_y * f.ops()->grid().integrate(f.mean_u());
}

// ---------------------------------------------------------------------------
// Shell machinery
// ---------------------------------------------------------------------------

namespace {

// Expands every eigenfamily of the field and routes each eigencomponent to
// the piece selected by route(kappa_proxy).
std::vector<SpectralField> route_field(
    const SpectralField& f, int npieces,
    const std::function<int(double)>& route) {
    const FieldOps& ops = *f.ops();
    const int nz = ops.res().nz;
    const ChannelParams& p = ops.params();
    std::vector<SpectralField> pieces(npieces, SpectralField(f.ops()));

    const DirichletSpace& ds = ops.dirichlet();
    const ClampedSpace& cs = ops.clamped();

    // mean profiles: the (0,0,k) family, kappa = k pi / h
    for (int which = 0; which < 2; ++which) {
        const VectorXd& prof = which == 0 ? f.mean_u() : f.mean_v();
        const VectorXd coeffs = ds.coefficients(prof.segment(1, nz - 2));
        std::vector<VectorXd> acc(npieces, VectorXd::Zero(coeffs.size()));
        for (int k = 0; k < coeffs.size(); ++k) {
            const double kappa = (k + 1) * M_PI / p.h;
            acc[route(kappa)][k] = coeffs[k];
        }
        for (int q = 0; q < npieces; ++q) {
            const VectorXd vals = ds.values(acc[q]);
            VectorXd& target =
                which == 0 ? pieces[q].mean_u() : pieces[q].mean_v();
            target.segment(1, nz - 2) = vals;
        }
    }

    for (int jx = 0; jx < ops.res().nx; ++jx) {
        for (int jy = 0; jy < ops.nyh(); ++jy) {
            if (!ops.retained(jx, jy) || (jx == 0 && jy == 0)) continue;
            const int m = ops.mode_id(jx, jy);
            const double kx = ops.kx(jx), ky = ops.ky(jy);
            const double k2 = kx * kx + ky * ky;

            const auto& wm = ops.wall_modes(k2);
            const VectorXd xr = cs.coordinates(f.w().col(m).real());
            const VectorXd xi = cs.coordinates(f.w().col(m).imag());
            const VectorXd cr = wm.project * xr;
            const VectorXd ci = wm.project * xi;
            const VectorXd er =
                ds.coefficients(f.eta().col(m).real().segment(1, nz - 2));
            const VectorXd ei =
                ds.coefficients(f.eta().col(m).imag().segment(1, nz - 2));

            std::vector<VectorXd> wr(npieces, VectorXd::Zero(cr.size()));
            std::vector<VectorXd> wi(npieces, VectorXd::Zero(cr.size()));
            std::vector<VectorXd> gr(npieces, VectorXd::Zero(er.size()));
            std::vector<VectorXd> gi(npieces, VectorXd::Zero(er.size()));
            for (int k = 0; k < cr.size(); ++k) {
                const double zk = (k + 1) * M_PI / p.h;
                const int q = route(std::sqrt(k2 + zk * zk));
                wr[q][k] = cr[k];
                wi[q][k] = ci[k];
            }
            for (int k = 0; k < er.size(); ++k) {
                const double zk = (k + 1) * M_PI / p.h;
                const int q = route(std::sqrt(k2 + zk * zk));
                gr[q][k] = er[k];
                gi[q][k] = ei[k];
            }
            for (int q = 0; q < npieces; ++q) {
                const VectorXd vr = cs.basis() * (wm.modes * wr[q]);
                const VectorXd vi = cs.basis() * (wm.modes * wi[q]);
                pieces[q].w().col(m) = vr + cplx(0.0, 1.0) * vi;
                const VectorXd hr = ds.values(gr[q]);
                const VectorXd hi = ds.values(gi[q]);
                pieces[q].eta().col(m).segment(1, nz - 2) =
                    hr + cplx(0.0, 1.0) * hi;
            }
        }
    }
    return pieces;
}

}  // namespace

SpectralField galerkin_project(const SpectralField& f, double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("galerkin_project: kappa must be > 0");
    }
    auto pieces =
        route_field(f, 2, [kappa](double k) { return k < kappa ? 0 : 1; });
    return pieces[0];
}

ShellDecomposition shell_decompose(const SpectralField& f,
                                   const std::vector<double>& cutoffs) {
    for (size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 0.0) || (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))) {
            throw std::invalid_argument(
                "shell_decompose: cutoffs must be positive ascending");
        }
    }
    const int npieces = static_cast<int>(cutoffs.size()) + 1;
    ShellDecomposition out;
    out.cutoffs = cutoffs;
    out.pieces = route_field(f, npieces, [&cutoffs](double k) {
        int q = 0;
        while (q < static_cast<int>(cutoffs.size()) && k >= cutoffs[q]) ++q;
        return q;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Trilinear form
// ---------------------------------------------------------------------------

double trilinear(const SpectralField& u, const SpectralField& v,
                 const SpectralField& w, bool dealias) {
    check_same(u, v);
    check_same(u, w);
    const FieldOps& ops = *u.ops();
    const Resolution& res = ops.res();
    const ChannelParams& p = ops.params();

    const int px = dealias ? 3 * res.nx / 2 : res.nx;
    const int py = res.ny == 1 ? 1 : (dealias ? 3 * res.ny / 2 : res.ny);

    MatrixXd zinterp;
    VectorXd zw;
    if (dealias) {
        // Gauss-Legendre fine rule, exact for the cubic z-integrand
        const int mz = (3 * res.nz) / 2 + 2;
        const QuadratureRule gl = gauss_legendre(mz, 0.0, p.h);
        const VectorXd pts = Eigen::Map<const VectorXd>(gl.nodes.data(), mz);
        zinterp = ops.grid().interpolation_to(pts);
        zw = Eigen::Map<const VectorXd>(gl.weights.data(), mz);
    } else {
        // collocation-grid quadrature: aliased negative control
        zinterp = MatrixXd::Identity(res.nz, res.nz);
        zw = ops.grid().integration_weights();
    }
    const int mz = static_cast<int>(zw.size());

    const auto cu = ops.components(u);
    const auto cv = ops.components(v);
    const auto cw = ops.components(w);
    const MatrixXcd dcd = ops.grid().diff().cast<cplx>();

    std::array<std::vector<double>, 3> pu, pw;
    for (int c = 0; c < 3; ++c) {
        ops.synthesize(cu[c], zinterp, px, py, pu[c]);
        ops.synthesize(cw[c], zinterp, px, py, pw[c]);
    }

    const size_t npts = static_cast<size_t>(mz) * px * py;
    std::vector<double> acc(npts, 0.0);
    std::vector<double> dv;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            MatrixXcd g;
            if (j == 0 || j == 1) {
                g = cv[i];
                for (int jx = 0; jx < res.nx; ++jx) {
                    for (int jy = 0; jy < ops.nyh(); ++jy) {
                        if (!ops.retained(jx, jy)) continue;
                        const double kk = j == 0 ? ops.kx(jx) : ops.ky(jy);
                        g.col(ops.mode_id(jx, jy)) *= cplx(0.0, kk);
                    }
                }
            } else {
                g = dcd * cv[i];
            }
            ops.synthesize(g, zinterp, px, py, dv);
            const std::vector<double>& uj = pu[j];
            const std::vector<double>& wi = pw[i];
            for (size_t t = 0; t < npts; ++t) acc[t] += uj[t] * dv[t] * wi[t];
        }
    }

    const double axy = (p.L_x / px) * (p.L_y / py);
    double total = 0.0;
    for (int l = 0; l < mz; ++l) {
        double s = 0.0;
        const double* a = acc.data() + static_cast<size_t>(l) * px * py;
        for (int t = 0; t < px * py; ++t) s += a[t];
        total += zw[l] * s;
    }
    return total * axy;
}

// ---------------------------------------------------------------------------
// Field constructors
// ---------------------------------------------------------------------------

SpectralField random_divfree(const ChannelParams& params, const Resolution& res,
                             std::uint64_t seed, double spectrum_slope) {
    FieldOpsPtr ops = FieldOps::make(params, res);
    SpectralField f(ops);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int nz = res.nz;

    const DirichletSpace& ds = ops->dirichlet();
    const ClampedSpace& cs = ops->clamped();

    for (int which = 0; which < 2; ++which) {
        VectorXd coeffs(ds.dim());
        for (int k = 0; k < ds.dim(); ++k) {
            const double kap = (k + 1) * M_PI / params.h;
            coeffs[k] = std::pow(kap, spectrum_slope) * gauss(rng);
        }
        VectorXd& prof = which == 0 ? f.mean_u() : f.mean_v();
        prof.segment(1, nz - 2) = ds.values(coeffs);
    }

    for (int jx = 0; jx < res.nx; ++jx) {
        for (int jy = 0; jy < ops->nyh(); ++jy) {
            if (!ops->retained(jx, jy) || (jx == 0 && jy == 0)) continue;
            // jy = 0 pairs with negative jx are conjugates of the positive twin
            if (jy == 0 && ops->jx_signed(jx) < 0) continue;
            const int m = ops->mode_id(jx, jy);
            const double kx = ops->kx(jx), ky = ops->ky(jy);
            const double k2 = kx * kx + ky * ky;

            const auto& wm = ops->wall_modes(k2);
            VectorXd cr(wm.lambda.size()), ci(wm.lambda.size());
            for (int k = 0; k < cr.size(); ++k) {
                const double zk = (k + 1) * M_PI / params.h;
                const double amp =
                    std::pow(std::sqrt(k2 + zk * zk), spectrum_slope);
                cr[k] = amp * gauss(rng);
                ci[k] = amp * gauss(rng);
            }
            VectorXd er(ds.dim()), ei(ds.dim());
            for (int k = 0; k < ds.dim(); ++k) {
                const double zk = (k + 1) * M_PI / params.h;
                const double amp =
                    std::pow(std::sqrt(k2 + zk * zk), spectrum_slope);
                er[k] = amp * gauss(rng);
                ei[k] = amp * gauss(rng);
            }
            const VectorXd wvr = cs.basis() * (wm.modes * cr);
            const VectorXd wvi = cs.basis() * (wm.modes * ci);
            f.w().col(m) = wvr + cplx(0.0, 1.0) * wvi;
            const VectorXd hr = ds.values(er);
            const VectorXd hi = ds.values(ei);
            f.eta().col(m).segment(1, nz - 2) = hr + cplx(0.0, 1.0) * hi;

            if (jy == 0) {
                const int jxc = (res.nx - jx) % res.nx;
                const int mc = ops->mode_id(jxc, 0);
                f.w().col(mc) = f.w().col(m).conjugate();
                f.eta().col(mc) = f.eta().col(m).conjugate();
            }
        }
    }

    const double nrm = l2_norm(f);
    if (nrm > 0.0) f *= 1.0 / nrm;
    return f;
}

SpectralField poiseuille_field(const ChannelParams& params,
                               const Resolution& res) {
    SpectralField f(params, res);
    const VectorXd& z = f.ops()->grid().nodes();
    for (int i = 0; i < res.nz; ++i) {
        f.mean_u()[i] = poiseuille::profile(z[i], params);
    }
    return f;
}

std::array<double, 3> max_abs_components(const SpectralField& f) {
    const FieldOps& ops = *f.ops();
    const Resolution& res = ops.res();
    const auto c = ops.components(f);
    const MatrixXd eye = MatrixXd::Identity(res.nz, res.nz);
    std::array<double, 3> out{0.0, 0.0, 0.0};
    std::vector<double> phys;
    for (int i = 0; i < 3; ++i) {
        ops.synthesize(c[i], eye, res.nx, res.ny, phys);
        double m = 0.0;
        for (double v : phys) m = std::max(m, std::abs(v));
        out[i] = m;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Snapshot I/O
// ---------------------------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'C', 'H', 'B', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kBasisTag = 1;  // nodal CGL potentials

void check_endianness() {
    if constexpr (std::endian::native != std::endian::little) {
        throw std::runtime_error("snapshot I/O requires a little-endian host");
    }
}

template <typename T>
void write_raw(std::ostream& os, const T* data, size_t count) {
    os.write(reinterpret_cast<const char*>(data), count * sizeof(T));
}

template <typename T>
void read_raw(std::istream& is, T* data, size_t count) {
    is.read(reinterpret_cast<char*>(data), count * sizeof(T));
    if (!is) throw std::runtime_error("snapshot: truncated file");
}
}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f) {
    check_endianness();
    os.write(kMagic, 8);
    write_raw(os, &kVersion, 1);
    write_raw(os, &kBasisTag, 1);
    const ChannelParams& p = f.params();
    const double par[5] = {p.L_x, p.L_y, p.h, p.nu, p.P};
    write_raw(os, par, 5);
    const std::int32_t r[3] = {f.res().nx, f.res().ny, f.res().nz};
    write_raw(os, r, 3);
    write_raw(os, f.mean_u().data(), f.mean_u().size());
    write_raw(os, f.mean_v().data(), f.mean_v().size());
    write_raw(os, reinterpret_cast<const double*>(f.w().data()),
              2 * f.w().size());
    write_raw(os, reinterpret_cast<const double*>(f.eta().data()),
              2 * f.eta().size());
    if (!os) throw std::runtime_error("snapshot: stream write failed");
}

void save_snapshot(const std::string& path, const SpectralField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path);
    write_snapshot(os, f);
}

SpectralField read_snapshot(std::istream& is) {
    check_endianness();
    char magic[8];
    read_raw(is, magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) {
        throw std::runtime_error("snapshot: bad magic");
    }
    std::uint32_t version = 0, basis = 0;
    read_raw(is, &version, 1);
    read_raw(is, &basis, 1);
    if (version != kVersion || basis != kBasisTag) {
        throw std::runtime_error("snapshot: unsupported version/basis");
    }
    double par[5];
    read_raw(is, par, 5);
    std::int32_t r[3];
    read_raw(is, r, 3);
    const ChannelParams p{par[0], par[1], par[2], par[3], par[4]};
    const Resolution rr{r[0], r[1], r[2]};
    SpectralField f(p, rr);
    read_raw(is, f.mean_u().data(), f.mean_u().size());
    read_raw(is, f.mean_v().data(), f.mean_v().size());
    read_raw(is, reinterpret_cast<double*>(f.w().data()), 2 * f.w().size());
    read_raw(is, reinterpret_cast<double*>(f.eta().data()),
             2 * f.eta().size());
    return f;
}

SpectralField load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    return read_snapshot(is);
}

}  // namespace chb
