#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "spinctrl/dynamics.hpp"

namespace spinctrl {

/// One candidate control sequence: m indices into the level table.
struct Individual {
    std::vector<int> genes;
    std::optional<double> performance;
    std::optional<double> fitness;
};

struct GAConfig {
    int population_size = 50;
    int generations = 20;
    double c_s = 0.8;        // minimum crossover rate
    double f_h = 0.5;        // fitness scale in the crossover rate
    double m_s = 0.2;        // maximum mutation rate
    double p_final = 0.8;
    double p_process = 0.2;
    int elite_count = 2;
    std::vector<double> levels = {1.0, 0.0, -1.0};
    int pulse_count = 100;
    double t_total = 2.0;
    int n_spins = 10;
    double kappa = 1.0;
    NoiseParams noise{1e-3, 1e-3, 0.0};
    std::uint64_t seed = 42;
    int substeps = 100;

    void validate() const;  // throws std::invalid_argument
};

struct GenerationRecord {
    int index = 0;  // 1-based generation number g_t
    std::vector<double> final_xi_z;
    double best_performance = 0.0;
    double mean_performance = 0.0;
    double median_performance = 0.0;
    double best_final_xi_z = 0.0;
    double mean_final_xi_z = 0.0;
    double median_final_xi_z = 0.0;
    std::vector<int> best_genes;
    std::vector<double> best_trace_times;
    std::vector<double> best_trace_xi_z;
};

struct GAResult {
    std::vector<GenerationRecord> records;
    Individual best;
    Trajectory best_trajectory;
    long floored_xi_samples = 0;  // samples clamped at the 1e-12 reward floor
};

using Evaluator = std::function<Trajectory(const Individual&)>;

std::vector<Individual> init_population(const GAConfig& config, std::mt19937_64& rng);

/// R = p_final / xi_Z^2[m] + p_process * mean_{q=1..m-1} 1 / xi_Z^2[q].
/// Samples are floored at 1e-12; floor hits are counted via floored_out when
/// provided. With m = 1 the process term is empty and contributes 0.
double performance(const Trajectory& traj, double p_final, double p_process,
                   long* floored_out = nullptr);

/// F_i = R_i - min_l R_l.
void fitness_assign(std::vector<Individual>& population);

/// Roulette-wheel index; uniform when all fitnesses are 0.
int select_parent(const std::vector<Individual>& population, std::mt19937_64& rng);

Individual crossover(const Individual& parent_i, const Individual& parent_j,
                     double fitness_i, double fitness_j, double c_s, double f_h,
                     std::mt19937_64& rng);

/// Per-gene mutation at rate m_d = m_s (1 - g_t / g).
Individual mutate(Individual ind, int g_t, int g, double m_s, int level_count,
                  std::mt19937_64& rng);

GAResult run_ga(const GAConfig& config, const Evaluator& evaluator, int workers = 1);

/// Evaluator backed by the cached Lindblad segment propagators, starting from
/// the x-polarized CSS.
Evaluator make_lindblad_evaluator(const GAConfig& config);

} // namespace spinctrl
