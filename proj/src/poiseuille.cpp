#include "chb/poiseuille.hpp"

#include <stdexcept>

#include "chb/quadrature.hpp"

namespace chb::poiseuille {

namespace {
void check_z(double z, const ChannelParams& p) {
    if (z < 0.0 || z > p.h) {
        throw std::invalid_argument("poiseuille: z outside [0,h]");
    }
}
}  // namespace

double profile(double z, const ChannelParams& p) {
    p.validate();
    check_z(z, p);
    return p.P * z * (p.h - z) / (2.0 * p.nu * p.L_x);
}

double profile_derivative(double z, const ChannelParams& p) {
    p.validate();
    check_z(z, p);
    return p.P * (p.h - 2.0 * z) / (2.0 * p.nu * p.L_x);
}

PoiseuilleQuantities quantities(const ChannelParams& p) {
    p.validate();
    PoiseuilleQuantities q;
    const double h2 = p.h * p.h;
    q.U = p.P * h2 / (12.0 * p.nu * p.L_x);
    q.e = h2 * h2 * p.P * p.P / (240.0 * p.nu * p.nu * p.L_x * p.L_x);
    q.eps = h2 * p.P * p.P / (12.0 * p.nu * p.L_x * p.L_x);
    q.Re = p.P * h2 * p.h / (12.0 * p.nu * p.nu * p.L_x);
    q.Cf = 12.0 / q.Re;
    // |u|_0^2 = L_x L_y (P/2 nu L_x)^2 int z^2(h-z)^2 dz, with the integral
    // equal to h^5/30; ||u||^2 likewise with int (h-2z)^2 dz = h^3/3.
    q.energy_total =
        p.L_y * h2 * h2 * p.h * p.P * p.P / (120.0 * p.nu * p.nu * p.L_x);
    q.enstrophy_total =
        p.L_y * h2 * p.h * p.P * p.P / (12.0 * p.nu * p.nu * p.L_x);
    return q;
}

PoiseuilleQuantities quadrature_quantities(const ChannelParams& p,
                                           int n_points) {
    p.validate();
    if (n_points < 4) {
        throw std::invalid_argument(
            "quadrature_quantities: n_points must be >= 4");
    }
    const QuadratureRule q = gauss_legendre(n_points, 0.0, p.h);
    double flux = 0.0, en = 0.0, grad = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double u = profile(q.nodes[i], p);
        const double du = profile_derivative(q.nodes[i], p);
        flux += q.weights[i] * u;
        en += q.weights[i] * u * u;
        grad += q.weights[i] * du * du;
    }
    PoiseuilleQuantities out;
    out.U = flux / p.h;
    out.energy_total = p.L_x * p.L_y * en;
    out.enstrophy_total = p.L_x * p.L_y * grad;
    out.e = out.energy_total / (2.0 * p.volume());
    out.eps = p.nu * out.enstrophy_total / p.volume();
    out.Re = reynolds(out.U, p);
    out.Cf = skin_friction(out.U, p);
    return out;
}

}  // namespace chb::poiseuille
