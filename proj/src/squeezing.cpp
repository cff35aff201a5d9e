#include "spinctrl/squeezing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinctrl {

namespace {

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

Matrix component_along(const SpinOperators& ops, const Eigen::Vector3d& n) {
    return n.x() * ops.jx + n.y() * ops.jy + n.z() * ops.jz;
}

} // namespace

double xi_z_squared(const DensityMatrix& rho, const SpinOperators& ops) {
    return 4.0 * variance(ops.jz, rho) / ops.n_spins;
}

MeanSpinFrame mean_spin_frame(const DensityMatrix& rho, const SpinOperators& ops) {
    const double jx = expectation(ops.jx, rho);
    const double jy = expectation(ops.jy, rho);
    const double jz = expectation(ops.jz, rho);
    const double mag = std::sqrt(jx * jx + jy * jy + jz * jz);
    if (mag <= 1e-9 * ops.n_spins) {
        throw std::domain_error("mean_spin_frame: mean spin length degenerate");
    }

    MeanSpinFrame frame;
    frame.magnitude = mag;
    frame.theta = std::acos(clamp_unit(jz / mag));
    const double sin_theta = std::sin(frame.theta);
    if (sin_theta < 1e-14) {
        frame.phi = 0.0;
    } else {
        const double sgn = (jy >= 0.0) ? 1.0 : -1.0;
        frame.phi = sgn * std::acos(clamp_unit(jx / (mag * sin_theta)));
    }

    const double st = std::sin(frame.theta), ct = std::cos(frame.theta);
    const double sp = std::sin(frame.phi), cp = std::cos(frame.phi);
    frame.n1 = {-sp, cp, 0.0};
    frame.n2 = {ct * cp, ct * sp, -st};
    return frame;
}

double optimal_phi(double A, double B) {
    const double r = std::hypot(A, B);
    if (r == 0.0) {
        return 0.0;
    }
    const double half = 0.5 * std::acos(clamp_unit(-A / r));
    return (B <= 0.0) ? half : std::numbers::pi - half;
}

double xi_perp_squared(const DensityMatrix& rho, const SpinOperators& ops) {
    const MeanSpinFrame frame = mean_spin_frame(rho, ops);
    const Matrix j1 = component_along(ops, frame.n1);
    const Matrix j2 = component_along(ops, frame.n2);

    const double sum = expectation(j1 * j1 + j2 * j2, rho);
    const double A = expectation(j1 * j1 - j2 * j2, rho);
    const double B = expectation(j1 * j2 + j2 * j1, rho);

    const double n = static_cast<double>(ops.n_spins);
    const double mag2 = frame.magnitude * frame.magnitude;
    return n * (sum - std::hypot(A, B)) / (2.0 * mag2);
}

} // namespace spinctrl
