#pragma once

#include <vector>

namespace chb {

/// Gauss-Legendre rule: nodes and weights, exact for polynomials of degree
/// <= 2n-1 on the target interval.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1,1]. Requires n >= 1.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Integrates f over [a,b] with an n-point Gauss-Legendre rule.
template <typename F>
double integrate(F&& f, int n, double a, double b) {
    const QuadratureRule q = gauss_legendre(n, a, b);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q.weights[i] * f(q.nodes[i]);
    return s;
}

}  // namespace chb
