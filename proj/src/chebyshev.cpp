#include "chb/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

#include "chb/quadrature.hpp"

namespace chb {

using Eigen::MatrixXd;
using Eigen::VectorXd;

ChebyshevGrid::ChebyshevGrid(int n, double h) : n_(n), h_(h) {
    if (n < 5) throw std::invalid_argument("ChebyshevGrid: need n >= 5");
    if (!(h > 0.0)) throw std::invalid_argument("ChebyshevGrid: h must be positive");

    const int nm1 = n - 1;
    // mapped variable x = cos(pi j/(n-1)) descending, z = h(1-x)/2 ascending
    VectorXd x(n);
    z_.resize(n);
    for (int j = 0; j < n; ++j) {
        x[j] = std::cos(M_PI * j / nm1);
        z_[j] = 0.5 * h * (1.0 - x[j]);
    }
    z_[0] = 0.0;
    z_[n - 1] = h;

    // differentiation matrix in x (off-diagonal closed form, diagonal by the
    // negative-sum trick), then d/dz = -(2/h) d/dx
    MatrixXd dx(n, n);
    auto c = [&](int i) { return (i == 0 || i == nm1) ? 2.0 : 1.0; };
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            dx(i, j) = (c(i) / c(j)) * sign / (x[i] - x[j]);
            rowsum += dx(i, j);
        }
        dx(i, i) = -rowsum;
    }
    d_ = (-2.0 / h) * dx;
    d2_ = d_ * d_;

    // DCT-I analysis/synthesis pair
    synthesis_.resize(n, n);
    analysis_.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            synthesis_(j, k) = std::cos(M_PI * j * k / nm1);
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            analysis_(k, j) =
                2.0 / (nm1 * c(k) * c(j)) * std::cos(M_PI * j * k / nm1);
        }
    }

    // Gauss-Legendre transfer for exact bilinear forms on the nodal space
    const QuadratureRule gl = gauss_legendre(n, 0.0, h);
    VectorXd pts = Eigen::Map<const VectorXd>(gl.nodes.data(), n);
    const MatrixXd g = interpolation_to(pts);
    VectorXd w = Eigen::Map<const VectorXd>(gl.weights.data(), n);
    mass_ = g.transpose() * w.asDiagonal() * g;
    int_w_ = g.transpose() * w;
}

MatrixXd ChebyshevGrid::interpolation_to(const VectorXd& pts) const {
    const int m = static_cast<int>(pts.size());
    MatrixXd t(m, n_);
    for (int i = 0; i < m; ++i) {
        const double x = 1.0 - 2.0 * pts[i] / h_;
        t(i, 0) = 1.0;
        if (n_ > 1) t(i, 1) = x;
        for (int k = 2; k < n_; ++k) {
            t(i, k) = 2.0 * x * t(i, k - 1) - t(i, k - 2);
        }
    }
    return t * analysis_;
}

double ChebyshevGrid::integrate(const VectorXd& values) const {
    return int_w_.dot(values);
}

DirichletSpace::DirichletSpace(const ChebyshevGrid& grid) {
    const int n = grid.n();
    const int dim = n - 2;
    // injection of interior values into full nodal vectors
    MatrixXd inject = MatrixXd::Zero(n, dim);
    for (int i = 0; i < dim; ++i) inject(i + 1, i) = 1.0;

    const MatrixXd q = grid.mass();
    mass_ = inject.transpose() * q * inject;
    const MatrixXd dz = grid.diff() * inject;  // nodal derivative values
    stiffness_ = dz.transpose() * q * dz;

    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(stiffness_, mass_);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("DirichletSpace: eigensolve failed");
    }
    eigenvalues_ = es.eigenvalues();
    modes_ = es.eigenvectors();  // M-orthonormal
    project_ = modes_.transpose() * mass_;
}

VectorXd DirichletSpace::coefficients(const VectorXd& interior) const {
    return project_ * interior;
}

VectorXd DirichletSpace::values(const VectorXd& coeffs) const {
    return modes_ * coeffs;
}

ClampedSpace::ClampedSpace(const ChebyshevGrid& grid) {
    const int n = grid.n();
    if (n < 7) throw std::invalid_argument("ClampedSpace: need n >= 7");
    // Constraints in coefficient space. z=0 maps to x=1 and z=h to x=-1:
    // T_k(1) = 1, T_k(-1) = (-1)^k, T_k'(1) = k^2, T_k'(-1) = (-1)^{k+1} k^2.
    MatrixXd constraints(4, n);
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        constraints(0, k) = 1.0;
        constraints(1, k) = sign;
        constraints(2, k) = static_cast<double>(k) * k;
        constraints(3, k) = -sign * k * k;
    }
    Eigen::JacobiSVD<MatrixXd> svd(constraints, Eigen::ComputeFullV);
    const MatrixXd kernel = svd.matrixV().rightCols(n - 4);
    basis_ = grid.synthesis() * kernel;

    const MatrixXd q = grid.mass();
    const MatrixXd b1 = grid.diff() * basis_;
    const MatrixXd b2 = grid.diff() * b1;
    m0_ = basis_.transpose() * q * basis_;
    m1_ = b1.transpose() * q * b1;
    m2_ = b2.transpose() * q * b2;

    cod_.compute(basis_);
}

VectorXd ClampedSpace::coordinates(const VectorXd& nodal) const {
    return cod_.solve(nodal);
}

}  // namespace chb
