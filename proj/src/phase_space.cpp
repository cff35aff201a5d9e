#include "spinctrl/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace spinctrl {

double SphereGrid::theta(int i) const {
    return std::numbers::pi * i / (n_theta - 1);
}

double SphereGrid::phi(int k) const {
    return 2.0 * std::numbers::pi * k / n_phi;
}

namespace {

bool is_half_integer(double x) {
    return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

bool is_integer(double x) {
    return std::abs(x - std::round(x)) < 1e-9;
}

long double log_factorial(double n) {
    return lgammal(static_cast<long double>(n) + 1.0L);
}

/// Normalized associated Legendre P_l^m(cos theta) for all l in [m, lmax],
/// Condon-Shortley phase included. Stable upward recurrence in l.
std::vector<double> normalized_legendre_column(int m, int lmax, double x) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    std::vector<double> p(static_cast<size_t>(lmax + 1), 0.0);

    double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
    for (int k = 1; k <= m; ++k) {
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    }
    if (m <= lmax) p[m] = pmm;
    if (m + 1 <= lmax) p[m + 1] = x * std::sqrt(2.0 * m + 3.0) * pmm;
    for (int l = m + 2; l <= lmax; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                                   (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
        p[l] = a * (x * p[l - 1] - b * p[l - 2]);
    }
    return p;
}

} // namespace

Complex spherical_harmonic(int l, int m, double theta, double phi) {
    const int am = std::abs(m);
    if (am > l) return 0.0;
    const auto col = normalized_legendre_column(am, l, std::cos(theta));
    Complex y = col[l] * std::exp(Complex(0.0, am * phi));
    if (m < 0) {
        y = std::conj(y) * ((am % 2 == 0) ? 1.0 : -1.0);
    }
    return y;
}

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
    for (double v : {j1, j2, j3, m1, m2, m3}) {
        if (!is_half_integer(v)) {
            throw std::invalid_argument("wigner_3j: inputs must be half-integers");
        }
    }
    if (std::abs(m1 + m2 + m3) > 1e-9) return 0.0;
    if (j3 < std::abs(j1 - j2) - 1e-9 || j3 > j1 + j2 + 1e-9) return 0.0;
    if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 || std::abs(m3) > j3 + 1e-9) {
        return 0.0;
    }
    if (!is_integer(j1 + j2 + j3) || !is_integer(j1 + m1) || !is_integer(j2 + m2) ||
        !is_integer(j3 + m3)) {
        return 0.0;
    }

    const long double log_delta =
        0.5L * (log_factorial(j1 + j2 - j3) + log_factorial(j1 - j2 + j3) +
                log_factorial(-j1 + j2 + j3) - log_factorial(j1 + j2 + j3 + 1));
    const long double log_ms =
        0.5L * (log_factorial(j1 + m1) + log_factorial(j1 - m1) + log_factorial(j2 + m2) +
                log_factorial(j2 - m2) + log_factorial(j3 + m3) + log_factorial(j3 - m3));

    const long t_min = std::lround(std::max({0.0, j2 - j3 - m1, j1 - j3 + m2}));
    const long t_max = std::lround(std::min({j1 + j2 - j3, j1 - m1, j2 + m2}));

    long double sum = 0.0L;
    for (long t = t_min; t <= t_max; ++t) {
        const long double log_term =
            log_factorial(t) + log_factorial(j3 - j2 + m1 + t) +
            log_factorial(j3 - j1 - m2 + t) + log_factorial(j1 + j2 - j3 - t) +
            log_factorial(j1 - m1 - t) + log_factorial(j2 + m2 - t);
        const long double term = expl(log_delta + log_ms - log_term);
        sum += (t % 2 == 0) ? term : -term;
    }
    const long phase = std::lround(j1 - j2 - m3);
    return static_cast<double>((phase % 2 == 0) ? sum : -sum);
}

PhaseField husimi_q(const DensityMatrix& rho, const SpinOperators& ops,
                    const SphereGrid& grid) {
    if (grid.n_theta < 2 || grid.n_phi < 2) {
        throw std::invalid_argument("husimi_q: grid sizes must be >= 2");
    }
    PhaseField field;
    field.grid = grid;
    field.values.resize(grid.n_theta, grid.n_phi);
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int k = 0; k < grid.n_phi; ++k) {
            const Eigen::VectorXcd css =
                coherent_spin_vector(ops, grid.theta(i), grid.phi(k));
            field.values(i, k) = std::max(0.0, std::real(css.dot(rho * css)));
        }
    }
    return field;
}

PhaseField wigner_function(const DensityMatrix& rho, const SpinOperators& ops,
                           const SphereGrid& grid) {
    if (grid.n_theta < 2 || grid.n_phi < 2) {
        throw std::invalid_argument("wigner_function: grid sizes must be >= 2");
    }
    const double j = ops.j;
    const int kmax = ops.n_spins;  // 2j

    // Multipole coefficients rho_kq = sum_{m',m} rho_{m'm} (-1)^{j-m'}
    //   sqrt(2k+1) (j k j; -m' q m), nonzero only for q = m' - m.
    std::vector<Eigen::VectorXcd> coeff(static_cast<size_t>(kmax + 1));
    for (int k = 0; k <= kmax; ++k) {
        coeff[k] = Eigen::VectorXcd::Zero(2 * k + 1);
        for (int ip = 0; ip < ops.dim; ++ip) {
            const double mp = ops.m_of(ip);
            for (int i = 0; i < ops.dim; ++i) {
                const double m = ops.m_of(i);
                const double q = mp - m;
                if (std::abs(q) > k) continue;
                const double w = wigner_3j(j, k, j, -mp, q, m);
                if (w == 0.0) continue;
                const long phase = std::lround(j - mp);
                const double sign = (phase % 2 == 0) ? 1.0 : -1.0;
                coeff[k](static_cast<int>(q) + k) +=
                    rho(ip, i) * sign * std::sqrt(2.0 * k + 1.0) * w;
            }
        }
    }

    PhaseField field;
    field.grid = grid;
    field.values.resize(grid.n_theta, grid.n_phi);
    for (int i = 0; i < grid.n_theta; ++i) {
        const double x = std::cos(grid.theta(i));
        // Legendre columns per |q|, covering all k at once.
        std::vector<std::vector<double>> leg(static_cast<size_t>(kmax + 1));
        for (int q = 0; q <= kmax; ++q) leg[q] = normalized_legendre_column(q, kmax, x);

        for (int p = 0; p < grid.n_phi; ++p) {
            const double phi = grid.phi(p);
            Complex w = 0.0;
            for (int k = 0; k <= kmax; ++k) {
                for (int q = -k; q <= k; ++q) {
                    const int aq = std::abs(q);
                    Complex y = leg[aq][k] * std::exp(Complex(0.0, aq * phi));
                    if (q < 0) y = std::conj(y) * ((aq % 2 == 0) ? 1.0 : -1.0);
                    w += coeff[k](q + k) * y;
                }
            }
            if (std::abs(w.imag()) >= 1e-10) {
                throw std::runtime_error("wigner_function: non-real field value");
            }
            field.values(i, p) = w.real();
        }
    }
    return field;
}

} // namespace spinctrl
