#include "spinctrl/spin_core.hpp"

#include <cmath>
#include <stdexcept>

namespace spinctrl {

SpinOperators build_spin_operators(int n_spins) {
    if (n_spins < 1) {
        throw std::invalid_argument("build_spin_operators: n_spins must be >= 1");
    }
    SpinOperators ops;
    ops.n_spins = n_spins;
    ops.j = 0.5 * n_spins;
    ops.dim = n_spins + 1;

    const int d = ops.dim;
    const double j = ops.j;

    ops.jz = Matrix::Zero(d, d);
    ops.jplus = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = j - i;
        ops.jz(i, i) = m;
        // J+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; index i-1 holds m+1.
        if (i > 0) {
            ops.jplus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    ops.jminus = ops.jplus.adjoint();
    ops.jx = 0.5 * (ops.jplus + ops.jminus);
    ops.jy = Complex(0, -0.5) * (ops.jplus - ops.jminus);
    return ops;
}

Eigen::VectorXcd coherent_spin_vector(const SpinOperators& ops, double theta, double phi) {
    const int d = ops.dim;
    const double j = ops.j;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);

    // Binomial amplitudes: |theta,phi> = sum_m sqrt(C(2j, j+m))
    //   cos(t/2)^(j+m) sin(t/2)^(j-m) e^{i(j-m)phi} |j,m>.
    Eigen::VectorXcd psi(d);
    for (int i = 0; i < d; ++i) {
        const double m = j - i;
        const double log_binom = std::lgamma(2 * j + 1) - std::lgamma(j + m + 1) -
                                 std::lgamma(j - m + 1);
        double amp = 0.0;
        if (c > 0.0 && s > 0.0) {
            amp = std::exp(0.5 * log_binom + (j + m) * std::log(c) +
                           (j - m) * std::log(s));
        } else if (s == 0.0) {
            amp = (i == 0) ? 1.0 : 0.0;
        } else {
            amp = (i == d - 1) ? 1.0 : 0.0;
        }
        psi(i) = amp * std::exp(Complex(0, (j - m) * phi));
    }
    psi.normalize();
    return psi;
}

DensityMatrix coherent_spin_state(const SpinOperators& ops, double theta, double phi) {
    const Eigen::VectorXcd psi = coherent_spin_vector(ops, theta, phi);
    return psi * psi.adjoint();
}

double expectation(const Matrix& op, const DensityMatrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols() || op.rows() != op.cols()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    const Complex tr = (op * rho).trace();
    if (std::abs(tr.imag()) >= 1e-8) {
        throw std::runtime_error("expectation: trace has non-negligible imaginary part");
    }
    return tr.real();
}

double variance(const Matrix& op, const DensityMatrix& rho) {
    const double mean = expectation(op, rho);
    const double second = expectation(op * op, rho);
    double var = second - mean * mean;
    if (var < 0.0) {
        if (var < -1e-10) {
            throw std::runtime_error("variance: negative beyond tolerance");
        }
        var = 0.0;
    }
    return var;
}

void check_density_matrix(const DensityMatrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::runtime_error("density matrix not square");
    }
    const double herm = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) {
        throw std::runtime_error("density matrix not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8) {
        throw std::runtime_error("density matrix trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw std::runtime_error("density matrix not positive");
    }
}

} // namespace spinctrl
