#include "spinctrl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace spinctrl {

double silverman_bandwidth(const std::vector<double>& samples) {
    const size_t n = samples.size();
    if (n == 0) throw std::invalid_argument("silverman_bandwidth: empty samples");
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sigma = (n > 1) ? std::sqrt(ss / (n - 1)) : 0.0;
    const double h = 1.06 * sigma * std::pow(static_cast<double>(n), -0.2);
    return std::max(h, 1e-12);
}

KdeEstimate kde(const std::vector<double>& samples, double bandwidth,
                const std::vector<double>& grid) {
    if (samples.empty()) throw std::invalid_argument("kde: empty samples");
    const double h = (bandwidth > 0.0) ? bandwidth : silverman_bandwidth(samples);

    // Summing in sorted order makes the estimate exactly permutation invariant.
    std::vector<double> ordered = samples;
    std::sort(ordered.begin(), ordered.end());

    KdeEstimate est;
    est.bandwidth = h;
    est.grid = grid;
    est.density.resize(grid.size());
    const double norm = 1.0 / (ordered.size() * h * std::sqrt(2.0 * std::numbers::pi));
    for (size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (double x : ordered) {
            const double u = (grid[g] - x) / h;
            acc += std::exp(-0.5 * u * u);
        }
        est.density[g] = norm * acc;
    }
    return est;
}

std::vector<double> kde_default_grid(const std::vector<double>& samples,
                                     double bandwidth, int points) {
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it - 5.0 * bandwidth;
    const double hi = *hi_it + 5.0 * bandwidth;
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * i / (points - 1);
    }
    return grid;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = q * (n - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - lo;
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

SummaryStats generation_stats(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("generation_stats: empty values");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
    s.median = quantile_sorted(sorted, 0.5);
    s.q25 = quantile_sorted(sorted, 0.25);
    s.q75 = quantile_sorted(sorted, 0.75);
    s.min = sorted.front();
    s.max = sorted.back();
    return s;
}

} // namespace spinctrl
