#pragma once

#include <Eigen/Dense>

namespace spinctrl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Density matrices are plain complex matrices; physicality is checked,
/// not encoded in the type.
using DensityMatrix = Eigen::MatrixXcd;

/// Collective spin operators for N spins-1/2 in the symmetric (Dicke)
/// subspace, J = N/2, dimension N+1. Basis is the J_z eigenbasis ordered
/// m = +j, +j-1, ..., -j.
struct SpinOperators {
    int n_spins = 0;
    double j = 0.0;
    int dim = 0;
    Matrix jx, jy, jz, jplus, jminus;

    /// m value of basis index i (i = 0 is m = +j).
    double m_of(int i) const { return j - i; }
};

SpinOperators build_spin_operators(int n_spins);

/// Pure coherent spin state pointing along (sin t cos p, sin t sin p, cos t),
/// returned as a density matrix. theta = 0 gives the m = +j Dicke state.
DensityMatrix coherent_spin_state(const SpinOperators& ops, double theta, double phi);

/// State vector of the same CSS (used by phase-space overlaps).
Eigen::VectorXcd coherent_spin_vector(const SpinOperators& ops, double theta, double phi);

/// Re tr(op * rho) for Hermitian op. Throws on dimension mismatch or if the
/// imaginary part of the trace exceeds 1e-8.
double expectation(const Matrix& op, const DensityMatrix& rho);

/// <op^2> - <op>^2, clamped to 0 if within -1e-10; throws if more negative.
double variance(const Matrix& op, const DensityMatrix& rho);

/// Checks Hermiticity (1e-10 per entry), unit trace (1e-8) and positivity
/// (min eigenvalue >= -1e-8). Throws std::runtime_error on violation.
void check_density_matrix(const DensityMatrix& rho);

} // namespace spinctrl
