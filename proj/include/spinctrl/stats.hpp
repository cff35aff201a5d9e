#pragma once

#include <vector>

namespace spinctrl {

struct KdeEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Silverman's rule 1.06 sigma n^{-1/5} (floored at a tiny positive value for
/// degenerate samples).
double silverman_bandwidth(const std::vector<double>& samples);

/// Gaussian-kernel density estimate on the given grid. bandwidth <= 0 selects
/// the Silverman default. Throws on empty samples.
KdeEstimate kde(const std::vector<double>& samples, double bandwidth,
                const std::vector<double>& grid);

/// Uniform grid spanning the samples +/- 5 bandwidths.
std::vector<double> kde_default_grid(const std::vector<double>& samples,
                                     double bandwidth, int points = 512);

SummaryStats generation_stats(const std::vector<double>& values);

} // namespace spinctrl
