#pragma once

#include <Eigen/Dense>

namespace chb {

/// Chebyshev-Gauss-Lobatto collocation on [0,h] with ascending nodes
/// z_j = h(1 - cos(pi j/(n-1)))/2. Functions are represented by their nodal
/// values (polynomials of degree <= n-1); differentiation, interpolation and
/// integration operators are dense and exact on that space.
class ChebyshevGrid {
  public:
    ChebyshevGrid(int n, double h);

    int n() const { return n_; }
    double height() const { return h_; }
    const Eigen::VectorXd& nodes() const { return z_; }

    /// Nodal differentiation matrix d/dz.
    const Eigen::MatrixXd& diff() const { return d_; }
    const Eigen::MatrixXd& diff2() const { return d2_; }

    /// Values -> Chebyshev coefficients (in the mapped variable) and back.
    const Eigen::MatrixXd& analysis() const { return analysis_; }
    const Eigen::MatrixXd& synthesis() const { return synthesis_; }

    /// Interpolation matrix from nodal values to arbitrary points in [0,h].
    Eigen::MatrixXd interpolation_to(const Eigen::VectorXd& pts) const;

    /// Exact mass matrix Q with f^T Q g = int_0^h f(z) g(z) dz for nodal
    /// vectors f, g (Gauss-Legendre assembled, exact to degree 2n-1).
    const Eigen::MatrixXd& mass() const { return mass_; }

    /// Exact integral of a nodal function over [0,h].
    double integrate(const Eigen::VectorXd& values) const;
    const Eigen::VectorXd& integration_weights() const { return int_w_; }

  private:
    int n_;
    double h_;
    Eigen::VectorXd z_;
    Eigen::MatrixXd d_, d2_;
    Eigen::MatrixXd analysis_, synthesis_;
    Eigen::MatrixXd mass_;
    Eigen::VectorXd int_w_;
};

/// Polynomials on the grid vanishing at z = 0 and z = h, parameterized by
/// their interior nodal values. Carries the exact mass/stiffness forms and
/// the generalized eigenbasis that diagonalizes both, i.e. the discrete
/// Dirichlet eigenpairs -phi'' = mu phi (conforming, so mu_k >= (k pi/h)^2).
class DirichletSpace {
  public:
    explicit DirichletSpace(const ChebyshevGrid& grid);

    int dim() const { return static_cast<int>(eigenvalues_.size()); }
    const Eigen::MatrixXd& mass() const { return mass_; }
    const Eigen::MatrixXd& stiffness() const { return stiffness_; }
    /// Ascending Dirichlet eigenvalues mu_k of the discrete pencil.
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

    /// Eigen-coefficients of interior nodal values (M-orthogonal projection).
    Eigen::VectorXd coefficients(const Eigen::VectorXd& interior) const;
    Eigen::VectorXd values(const Eigen::VectorXd& coeffs) const;

  private:
    Eigen::MatrixXd mass_, stiffness_;
    Eigen::MatrixXd modes_;        // columns: M-orthonormal eigenvectors
    Eigen::MatrixXd project_;      // modes^T * mass
    Eigen::VectorXd eigenvalues_;
};

/// Polynomials with clamped ends (p = p' = 0 at z = 0, h), used for the
/// wall-normal velocity potential. Parameterized by an explicit nodal basis;
/// carries the exact forms m0 = int p q, m1 = int p' q', m2 = int p'' q''.
class ClampedSpace {
  public:
    explicit ClampedSpace(const ChebyshevGrid& grid);

    int dim() const { return static_cast<int>(basis_.cols()); }
    /// Nodal values of the basis polynomials (n x dim).
    const Eigen::MatrixXd& basis() const { return basis_; }
    const Eigen::MatrixXd& m0() const { return m0_; }
    const Eigen::MatrixXd& m1() const { return m1_; }
    const Eigen::MatrixXd& m2() const { return m2_; }

    /// Basis coordinates of a nodal vector (least squares; the residual is
    /// round-off for fields that satisfy the clamped conditions).
    Eigen::VectorXd coordinates(const Eigen::VectorXd& nodal) const;

  private:
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd m0_, m1_, m2_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

}  // namespace chb
