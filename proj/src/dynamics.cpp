#include "spinctrl/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinctrl/squeezing.hpp"

namespace spinctrl {

namespace {

constexpr double kTraceDriftFail = 1e-6;

DensityMatrix hermitize_and_renormalize(const Matrix& rho) {
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift >= kTraceDriftFail) {
        throw std::runtime_error(
            "evolve_segment: trace drift exceeds tolerance, raise substeps");
    }
    DensityMatrix out = 0.5 * (rho + rho.adjoint().eval());
    out /= out.trace().real();
    return out;
}

} // namespace

LindbladGenerator::LindbladGenerator(const SpinOperators& ops, double omega,
                                     double kappa, const NoiseParams& noise) {
    hamiltonian = kappa * (ops.jz * ops.jz) + omega * ops.jx;
    auto add_channel = [this](double rate, const Matrix& x) {
        if (rate == 0.0) return;
        rates.push_back(rate);
        channels.push_back(x);
        channel_norms.push_back(x.adjoint() * x);
    };
    add_channel(noise.gamma * (noise.n_th + 1.0), ops.jminus);
    add_channel(noise.gamma * noise.n_th, ops.jplus);
    add_channel(noise.gamma_z, ops.jz);
}

Matrix LindbladGenerator::apply(const Matrix& rho) const {
    Matrix out = Complex(0, -1) * (hamiltonian * rho - rho * hamiltonian);
    for (size_t c = 0; c < channels.size(); ++c) {
        const Matrix& x = channels[c];
        const Matrix& xx = channel_norms[c];
        out += rates[c] * (2.0 * (x * rho * x.adjoint()) - xx * rho - rho * xx);
    }
    return out;
}

Matrix LindbladGenerator::superoperator() const {
    const auto d = hamiltonian.rows();
    const Matrix id = Matrix::Identity(d, d);
    // vec(A rho B) = (B^T (x) A) vec(rho), column stacking.
    Matrix sup = Complex(0, -1) * (Eigen::kroneckerProduct(id, hamiltonian) -
                                   Eigen::kroneckerProduct(hamiltonian.transpose(), id));
    for (size_t c = 0; c < channels.size(); ++c) {
        const Matrix& x = channels[c];
        const Matrix& xx = channel_norms[c];
        sup += rates[c] *
               (2.0 * Eigen::kroneckerProduct(x.conjugate(), x) -
                Eigen::kroneckerProduct(id, xx) -
                Eigen::kroneckerProduct(xx.transpose(), id));
    }
    return sup;
}

Matrix liouvillian_apply(const SpinOperators& ops, double omega, double kappa,
                         const NoiseParams& noise, const DensityMatrix& rho) {
    if (rho.rows() != ops.dim || rho.cols() != ops.dim) {
        throw std::invalid_argument("liouvillian_apply: dimension mismatch");
    }
    return LindbladGenerator(ops, omega, kappa, noise).apply(rho);
}

DensityMatrix evolve_segment(const DensityMatrix& rho, const SpinOperators& ops,
                             double omega, double kappa, const NoiseParams& noise,
                             double dt, int substeps) {
    if (dt <= 0.0 || substeps < 1) {
        throw std::invalid_argument("evolve_segment: dt > 0 and substeps >= 1 required");
    }
    const LindbladGenerator gen(ops, omega, kappa, noise);
    const double h = dt / substeps;
    Matrix state = rho;
    for (int s = 0; s < substeps; ++s) {
        const Matrix k1 = gen.apply(state);
        const Matrix k2 = gen.apply(state + 0.5 * h * k1);
        const Matrix k3 = gen.apply(state + 0.5 * h * k2);
        const Matrix k4 = gen.apply(state + h * k3);
        state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return hermitize_and_renormalize(state);
}

DensityMatrix oracle_evolve_exact(const DensityMatrix& rho, const SpinOperators& ops,
                                  double omega, double kappa, const NoiseParams& noise,
                                  double dt) {
    if (ops.dim > 16) {
        throw std::invalid_argument("oracle_evolve_exact: dim > 16 refused");
    }
    const int d = ops.dim;
    const Matrix sup = LindbladGenerator(ops, omega, kappa, noise).superoperator();
    const Matrix prop = (dt * sup).exp();
    Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
    vec = prop * vec;
    return Eigen::Map<const Matrix>(vec.data(), d, d);
}

Trajectory evolve_sequence(const DensityMatrix& rho0, const PulseSchedule& schedule,
                           const SpinOperators& ops, double kappa,
                           const NoiseParams& noise, int substeps_per_segment) {
    if (schedule.segments() < 1) {
        throw std::invalid_argument("evolve_sequence: empty schedule");
    }
    const double dt = schedule.segment_dt();
    Trajectory traj;
    traj.states.push_back(rho0);
    traj.xi_z.push_back(xi_z_squared(rho0, ops));
    traj.times.push_back(0.0);
    for (int k = 0; k < schedule.segments(); ++k) {
        const DensityMatrix next =
            evolve_segment(traj.states.back(), ops, schedule.omega_of(k), kappa, noise,
                           dt, substeps_per_segment);
        traj.states.push_back(next);
        traj.xi_z.push_back(xi_z_squared(next, ops));
        traj.times.push_back((k + 1) * dt);
    }
    return traj;
}

SegmentPropagatorSet::SegmentPropagatorSet(const SpinOperators& ops, double kappa,
                                           const NoiseParams& noise,
                                           const std::vector<double>& levels,
                                           double segment_dt, int substeps)
    : ops_(ops), segment_dt_(segment_dt) {
    if (segment_dt <= 0.0 || substeps < 1) {
        throw std::invalid_argument("SegmentPropagatorSet: bad dt or substeps");
    }
    const int d2 = ops.dim * ops.dim;
    const Matrix id = Matrix::Identity(d2, d2);
    const double h = segment_dt / substeps;
    for (double omega : levels) {
        const Matrix sup = LindbladGenerator(ops, omega, kappa, noise).superoperator();
        const Matrix hl = h * sup;
        Matrix step = id + hl + (hl * hl) / 2.0 + (hl * hl * hl) / 6.0 +
                      (hl * hl * hl * hl) / 24.0;
        // step^substeps by binary powering
        Matrix seg = id;
        Matrix base = step;
        int e = substeps;
        while (e > 0) {
            if (e & 1) seg = seg * base;
            base = base * base;
            e >>= 1;
        }
        segment_maps_.push_back(std::move(seg));
    }
}

Trajectory SegmentPropagatorSet::propagate(const DensityMatrix& rho0,
                                           const std::vector<int>& sequence) const {
    const int d = ops_.dim;
    Trajectory traj;
    traj.states.push_back(rho0);
    traj.xi_z.push_back(xi_z_squared(rho0, ops_));
    traj.times.push_back(0.0);
    Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
    for (size_t k = 0; k < sequence.size(); ++k) {
        vec = segment_maps_.at(static_cast<size_t>(sequence[k])) * vec;
        const DensityMatrix next =
            hermitize_and_renormalize(Eigen::Map<const Matrix>(vec.data(), d, d));
        vec = Eigen::Map<const Eigen::VectorXcd>(next.data(), d * d);
        traj.states.push_back(next);
        traj.xi_z.push_back(xi_z_squared(next, ops_));
        traj.times.push_back((k + 1) * segment_dt_);
    }
    return traj;
}

} // namespace spinctrl
