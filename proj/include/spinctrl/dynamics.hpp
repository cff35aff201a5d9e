#pragma once

#include <vector>

#include "spinctrl/spin_core.hpp"

namespace spinctrl {

/// Rates in units of kappa. n_th is the mean thermal excitation number.
struct NoiseParams {
    double gamma = 0.0;
    double gamma_z = 0.0;
    double n_th = 0.0;
};

/// Piecewise-constant control: m segments of equal length t_total/m, each
/// segment's amplitude taken from a discrete level table.
struct PulseSchedule {
    double t_total = 2.0;
    std::vector<double> levels;
    std::vector<int> sequence;

    int segments() const { return static_cast<int>(sequence.size()); }
    double segment_dt() const { return t_total / segments(); }
    double omega_of(int k) const { return levels.at(static_cast<size_t>(sequence[k])); }
};

/// State snapshots at t = 0 and after each segment, with the matching
/// xi_Z^2 samples and times.
struct Trajectory {
    std::vector<DensityMatrix> states;
    std::vector<double> xi_z;
    std::vector<double> times;
};

/// Lindblad generator with H = kappa J_z^2 + omega J_x and channels
/// gamma(n_th+1) D[J-], gamma n_th D[J+], gamma_z D[J_z], where
/// D[X]rho = 2 X rho X+ - X+X rho - rho X+X.
struct LindbladGenerator {
    Matrix hamiltonian;
    std::vector<double> rates;
    std::vector<Matrix> channels;        // X
    std::vector<Matrix> channel_norms;   // X+X

    LindbladGenerator(const SpinOperators& ops, double omega, double kappa,
                      const NoiseParams& noise);

    /// drho/dt for the given state.
    Matrix apply(const Matrix& rho) const;

    /// Column-stacked superoperator matrix, dim^2 x dim^2.
    Matrix superoperator() const;
};

Matrix liouvillian_apply(const SpinOperators& ops, double omega, double kappa,
                         const NoiseParams& noise, const DensityMatrix& rho);

/// Fixed-step classical RK4 over one constant-amplitude segment. The output
/// is re-Hermitized and trace-renormalized; throws if the raw trace drift
/// reaches 1e-6 (raise substeps).
DensityMatrix evolve_segment(const DensityMatrix& rho, const SpinOperators& ops,
                             double omega, double kappa, const NoiseParams& noise,
                             double dt, int substeps);

/// Matrix-exponential of the vectorized Liouvillian; exact up to roundoff.
/// Guarded to dim <= 16 (test/validation use).
DensityMatrix oracle_evolve_exact(const DensityMatrix& rho, const SpinOperators& ops,
                                  double omega, double kappa, const NoiseParams& noise,
                                  double dt);

Trajectory evolve_sequence(const DensityMatrix& rho0, const PulseSchedule& schedule,
                           const SpinOperators& ops, double kappa,
                           const NoiseParams& noise, int substeps_per_segment);

/// Precomputed per-level segment propagators. For a constant generator L the
/// RK4 substep is the linear map I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24, so
/// a whole segment is that map raised to the substep count; trajectories then
/// cost one matrix-vector product per segment. Agrees with evolve_segment to
/// roundoff.
class SegmentPropagatorSet {
public:
    SegmentPropagatorSet(const SpinOperators& ops, double kappa,
                         const NoiseParams& noise, const std::vector<double>& levels,
                         double segment_dt, int substeps);

    Trajectory propagate(const DensityMatrix& rho0, const std::vector<int>& sequence) const;

private:
    SpinOperators ops_;
    double segment_dt_;
    std::vector<Matrix> segment_maps_;  // one per level, dim^2 x dim^2
};

} // namespace spinctrl
