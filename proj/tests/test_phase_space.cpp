#include <doctest.h>

#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "spinctrl/dynamics.hpp"
#include "spinctrl/phase_space.hpp"

using namespace spinctrl;

namespace {
const double pi = std::numbers::pi;
} // namespace

TEST_CASE("Husimi peaks at the CSS direction and stays in [0,1]") {
    const auto ops = build_spin_operators(8);
    const SphereGrid grid{65, 128};
    const double theta0 = grid.theta(32);  // pi/2 on this grid
    const double phi0 = grid.phi(16);
    const auto rho = coherent_spin_state(ops, theta0, phi0);
    const auto field = husimi_q(rho, ops, grid);
    CHECK(field.values(32, 16) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(field.values.minCoeff() >= 0.0);
    CHECK(field.values.maxCoeff() <= 1.0 + 1e-9);
}

TEST_CASE("Husimi of the maximally mixed state is flat at 1/(N+1)") {
    const auto ops = build_spin_operators(6);
    const DensityMatrix mixed =
        Matrix::Identity(ops.dim, ops.dim) / static_cast<double>(ops.dim);
    const auto field = husimi_q(mixed, ops, SphereGrid{16, 32});
    for (int i = 0; i < 16; ++i)
        for (int k = 0; k < 32; ++k)
            CHECK(field.values(i, k) == doctest::Approx(1.0 / ops.dim).epsilon(1e-10));
}

TEST_CASE("Husimi integrates to 1 with the (2j+1)/(4pi) measure") {
    const auto ops = build_spin_operators(5);
    const auto rho = coherent_spin_state(ops, 0.9, 2.1);
    const SphereGrid grid{128, 256};
    const auto field = husimi_q(rho, ops, grid);

    // Quadrature: trapezoid in theta, periodic uniform sum in phi.
    const double dtheta = pi / (grid.n_theta - 1);
    const double dphi = 2 * pi / grid.n_phi;
    double integral = 0.0;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double w_theta = (i == 0 || i == grid.n_theta - 1) ? 0.5 : 1.0;
        for (int k = 0; k < grid.n_phi; ++k) {
            integral += w_theta * field.values(i, k) * std::sin(grid.theta(i));
        }
    }
    integral *= dtheta * dphi * (ops.n_spins + 1.0) / (4 * pi);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("wigner_3j closed form for (j 0 j; -m 0 m)") {
    for (double j : {0.5, 1.0, 2.5, 7.0, 15.0, 30.0}) {
        for (double m = -j; m <= j; m += 1.0) {
            const double expected =
                ((std::lround(j - m) % 2 == 0) ? 1.0 : -1.0) / std::sqrt(2 * j + 1);
            CHECK(wigner_3j(j, 0, j, -m, 0, m) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("wigner_3j selection rules") {
    CHECK(wigner_3j(1, 1, 1, 1, 1, 0) == 0.0);       // m sum != 0
    CHECK(wigner_3j(1, 1, 3, 0, 0, 0) == 0.0);       // triangle violated
    CHECK(wigner_3j(0.5, 0.5, 0.5, 0.5, -0.5, 0) == 0.0);  // half-integer perimeter
    CHECK_THROWS_AS(wigner_3j(0.3, 1, 1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("wigner_3j known exact values") {
    CHECK(wigner_3j(1, 1, 1, 1, -1, 0) == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(wigner_3j(2, 1, 1, 0, 0, 0) == doctest::Approx(std::sqrt(2.0 / 15.0)));
    CHECK(wigner_3j(0.5, 0.5, 1, 0.5, 0.5, -1) == doctest::Approx(-1.0 / std::sqrt(3.0)));
}

TEST_CASE("wigner_3j orthogonality sums") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> twice_j(0, 20);
    int checked = 0;
    while (checked < 10) {
        const double j1 = twice_j(rng) / 2.0;
        const double j2 = twice_j(rng) / 2.0;
        const double j3 = twice_j(rng) / 2.0;
        if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) continue;
        if (std::abs(j1 + j2 + j3 - std::round(j1 + j2 + j3)) > 1e-9) continue;
        ++checked;
        // Summing the orthogonality relation over every m3 gives exactly 1.
        double sum = 0.0;
        for (double m1 = -j1; m1 <= j1 + 1e-9; m1 += 1.0) {
            for (double m2 = -j2; m2 <= j2 + 1e-9; m2 += 1.0) {
                const double w = wigner_3j(j1, j2, j3, m1, m2, -(m1 + m2));
                sum += w * w;
            }
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Wigner field of a Dicke state is phi-independent") {
    const auto ops = build_spin_operators(6);
    DensityMatrix dicke = Matrix::Zero(ops.dim, ops.dim);
    dicke(2, 2) = 1.0;
    const auto field = wigner_function(dicke, ops, SphereGrid{12, 24});
    for (int i = 0; i < 12; ++i) {
        for (int k = 1; k < 24; ++k) {
            CHECK(field.values(i, k) == doctest::Approx(field.values(i, 0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("Wigner field of the maximally mixed state is constant") {
    const auto ops = build_spin_operators(5);
    const DensityMatrix mixed =
        Matrix::Identity(ops.dim, ops.dim) / static_cast<double>(ops.dim);
    const auto field = wigner_function(mixed, ops, SphereGrid{10, 20});
    const double expected = field.values(0, 0);
    CHECK(field.values.maxCoeff() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(field.values.minCoeff() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Wigner field rotates with the state about z") {
    const auto ops = build_spin_operators(4);
    const auto rho = coherent_spin_state(ops, pi / 3, 0.0);
    const int n_phi = 32;
    const SphereGrid grid{17, n_phi};
    const double alpha = 2 * pi * 4 / n_phi;  // four grid columns

    const Matrix rot = (Complex(0, -alpha) * ops.jz).exp();
    const DensityMatrix rotated = rot * rho * rot.adjoint();

    const auto base = wigner_function(rho, ops, grid);
    const auto moved = wigner_function(rotated, ops, grid);
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int k = 0; k < n_phi; ++k) {
            CHECK(moved.values(i, (k + 4) % n_phi) ==
                  doctest::Approx(base.values(i, k)).epsilon(1e-6));
        }
    }
}

TEST_CASE("squeezed states develop Wigner negativity") {
    const auto ops = build_spin_operators(10);
    const auto rho0 = coherent_spin_state(ops, pi / 2, 0.0);
    const NoiseParams noise{1e-3, 1e-3, 0.0};
    const auto rho = evolve_segment(rho0, ops, 0.0, 1.0, noise, 2.0, 2000);
    const auto field = wigner_function(rho, ops, SphereGrid{48, 96});
    CHECK(field.values.minCoeff() < 0.0);
}
