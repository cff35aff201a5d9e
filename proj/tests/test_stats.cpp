#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spinctrl/stats.hpp"

using namespace spinctrl;

TEST_CASE("single sample with unit bandwidth is the standard normal") {
    std::vector<double> grid;
    for (double x = -4; x <= 4; x += 0.25) grid.push_back(x);
    const auto est = kde({0.0}, 1.0, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double expected =
            std::exp(-0.5 * grid[i] * grid[i]) / std::sqrt(2 * std::numbers::pi);
        CHECK(est.density[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("kde of a symmetric pair is symmetric") {
    std::vector<double> grid;
    for (int i = -30; i <= 30; ++i) grid.push_back(i / 10.0);
    const auto est = kde({-1.3, 1.3}, 0.7, grid);
    const size_t n = grid.size();
    for (size_t i = 0; i < n; ++i) {
        CHECK(est.density[i] == doctest::Approx(est.density[n - 1 - i]).epsilon(1e-12));
    }
}

TEST_CASE("kde is invariant under sample permutation") {
    std::vector<double> samples{0.2, -1.0, 3.1, 0.7, -0.4};
    std::vector<double> shuffled{3.1, 0.7, 0.2, -0.4, -1.0};
    std::vector<double> grid{-2, -1, 0, 1, 2, 3};
    const auto a = kde(samples, 0.5, grid);
    const auto b = kde(shuffled, 0.5, grid);
    CHECK(a.density == b.density);
}

TEST_CASE("kde recovers a standard normal from 1e4 draws") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> samples(10000);
    for (auto& x : samples) x = gauss(rng);

    const double h = silverman_bandwidth(samples);
    const auto grid = kde_default_grid(samples, h);
    const auto est = kde(samples, 0.0, grid);

    double sup_err = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double truth =
            std::exp(-0.5 * grid[i] * grid[i]) / std::sqrt(2 * std::numbers::pi);
        sup_err = std::max(sup_err, std::abs(est.density[i] - truth));
    }
    CHECK(sup_err < 0.02);
}

TEST_CASE("kde integrates to 1 for random sample sets") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 5.0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> samples(200);
        for (auto& x : samples) x = u(rng);
        const double h = silverman_bandwidth(samples);
        const auto grid = kde_default_grid(samples, h, 1024);
        const auto est = kde(samples, h, grid);
        double integral = 0.0;
        for (size_t i = 1; i < grid.size(); ++i) {
            integral += 0.5 * (est.density[i] + est.density[i - 1]) * (grid[i] - grid[i - 1]);
        }
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(*std::min_element(est.density.begin(), est.density.end()) >= 0.0);
    }
}

TEST_CASE("kde rejects empty samples") {
    CHECK_THROWS_AS(kde({}, 1.0, {0.0}), std::invalid_argument);
}

TEST_CASE("generation_stats reference values") {
    const auto odd = generation_stats({1, 2, 3});
    CHECK(odd.mean == doctest::Approx(2.0));
    CHECK(odd.median == doctest::Approx(2.0));

    const auto even = generation_stats({1, 2, 3, 4});
    CHECK(even.median == doctest::Approx(2.5));

    const auto constant = generation_stats({7, 7, 7, 7});
    CHECK(constant.median == doctest::Approx(7.0));
    CHECK(constant.q25 == doctest::Approx(7.0));
    CHECK(constant.q75 == doctest::Approx(7.0));
    CHECK(constant.min == doctest::Approx(7.0));
    CHECK(constant.max == doctest::Approx(7.0));

    CHECK_THROWS_AS(generation_stats({}), std::invalid_argument);
}

TEST_CASE("mean and median are bounded by min and max") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> values(1 + trial);
        for (auto& v : values) v = u(rng);
        const auto s = generation_stats(values);
        CHECK(s.mean >= s.min);
        CHECK(s.mean <= s.max);
        CHECK(s.median >= s.min);
        CHECK(s.median <= s.max);
    }
}
