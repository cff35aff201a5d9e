#pragma once

#include "spinctrl/spin_core.hpp"

namespace spinctrl {

/// Orthonormal frame attached to the mean spin direction.
/// n1 = (-sin p, cos p, 0), n2 = (cos t cos p, cos t sin p, -sin t).
struct MeanSpinFrame {
    double theta = 0.0;
    double phi = 0.0;
    double magnitude = 0.0;
    Eigen::Vector3d n1;
    Eigen::Vector3d n2;
};

/// xi_Z^2 = 4 Var(J_z) / N.
double xi_z_squared(const DensityMatrix& rho, const SpinOperators& ops);

/// Throws std::domain_error when the mean spin length is below 1e-9 * N
/// (frame and xi_perp^2 undefined).
MeanSpinFrame mean_spin_frame(const DensityMatrix& rho, const SpinOperators& ops);

/// Angle minimizing the transverse variance, from
/// A = <J_n1^2 - J_n2^2>, B = <{J_n1, J_n2}>.
double optimal_phi(double A, double B);

/// Minimum transverse squeezing parameter,
/// N [<J_n1^2 + J_n2^2> - sqrt(A^2 + B^2)] / (2 |<J>|^2).
double xi_perp_squared(const DensityMatrix& rho, const SpinOperators& ops);

} // namespace spinctrl
