#include "spinctrl/ga.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spinctrl/stats.hpp"

namespace spinctrl {

void GAConfig::validate() const {
    if (population_size < 1) throw std::invalid_argument("population_size < 1");
    if (generations < 1) throw std::invalid_argument("generations < 1");
    if (!(c_s > 0.0 && c_s <= 1.0)) throw std::invalid_argument("c_s out of (0,1]");
    if (!(f_h > 0.0)) throw std::invalid_argument("f_h <= 0");
    if (m_s < 0.0 || m_s > 1.0) throw std::invalid_argument("m_s out of [0,1]");
    if (std::abs(p_final + p_process - 1.0) > 1e-12) {
        throw std::invalid_argument("p_final + p_process != 1");
    }
    if (elite_count < 0 || elite_count >= population_size) {
        throw std::invalid_argument("elite_count must be in [0, population_size)");
    }
    if (levels.empty()) throw std::invalid_argument("empty level table");
    if (pulse_count < 1) throw std::invalid_argument("pulse_count < 1");
    if (t_total <= 0.0) throw std::invalid_argument("t_total <= 0");
    if (n_spins < 1) throw std::invalid_argument("n_spins < 1");
    if (noise.gamma < 0.0 || noise.gamma_z < 0.0 || noise.n_th < 0.0) {
        throw std::invalid_argument("negative noise parameter");
    }
    if (substeps < 1) throw std::invalid_argument("substeps < 1");
}

std::vector<Individual> init_population(const GAConfig& config, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(config.levels.size()) - 1);
    std::vector<Individual> population(config.population_size);
    for (auto& ind : population) {
        ind.genes.resize(config.pulse_count);
        for (auto& gene : ind.genes) gene = pick(rng);
    }
    return population;
}

double performance(const Trajectory& traj, double p_final, double p_process,
                   long* floored_out) {
    constexpr double kXiFloor = 1e-12;
    const int m = static_cast<int>(traj.xi_z.size()) - 1;
    if (m < 1) throw std::invalid_argument("performance: trajectory has no segments");

    long floored = 0;
    auto inverse = [&](double xi) {
        if (xi < kXiFloor) {
            xi = kXiFloor;
            ++floored;
        }
        return 1.0 / xi;
    };

    double r = p_final * inverse(traj.xi_z[m]);
    if (m >= 2) {
        double sum = 0.0;
        for (int q = 1; q <= m - 1; ++q) sum += inverse(traj.xi_z[q]);
        r += p_process * sum / (m - 1);
    }
    if (floored_out) *floored_out += floored;
    return r;
}

void fitness_assign(std::vector<Individual>& population) {
    double min_r = std::numeric_limits<double>::infinity();
    for (const auto& ind : population) min_r = std::min(min_r, ind.performance.value());
    for (auto& ind : population) ind.fitness = ind.performance.value() - min_r;
}

int select_parent(const std::vector<Individual>& population, std::mt19937_64& rng) {
    double total = 0.0;
    for (const auto& ind : population) total += ind.fitness.value();
    if (total <= 0.0) {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(population.size()) - 1);
        return pick(rng);
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double target = u(rng);
    for (size_t i = 0; i < population.size(); ++i) {
        target -= population[i].fitness.value();
        if (target <= 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(population.size()) - 1;
}

Individual crossover(const Individual& parent_i, const Individual& parent_j,
                     double fitness_i, double fitness_j, double c_s, double f_h,
                     std::mt19937_64& rng) {
    if (parent_i.genes.size() != parent_j.genes.size()) {
        throw std::invalid_argument("crossover: gene length mismatch");
    }
    double c_d = c_s + (1.0 - c_s) * std::abs(fitness_i - fitness_j) / f_h;
    c_d = std::clamp(c_d, c_s, 1.0);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    Individual child;
    child.genes.resize(parent_i.genes.size());
    for (size_t k = 0; k < child.genes.size(); ++k) {
        child.genes[k] = (u(rng) > c_d) ? parent_j.genes[k] : parent_i.genes[k];
    }
    return child;
}

Individual mutate(Individual ind, int g_t, int g, double m_s, int level_count,
                  std::mt19937_64& rng) {
    if (g_t < 1 || g_t > g) throw std::invalid_argument("mutate: g_t out of range");
    const double m_d = m_s * (1.0 - static_cast<double>(g_t) / g);
    ind.performance.reset();
    ind.fitness.reset();
    if (m_d <= 0.0) return ind;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, level_count - 1);
    for (auto& gene : ind.genes) {
        if (u(rng) < m_d) gene = pick(rng);
    }
    return ind;
}

namespace {

struct Evaluated {
    double final_xi = 0.0;
    std::vector<double> times;
    std::vector<double> xi_trace;
};

} // namespace

GAResult run_ga(const GAConfig& config, const Evaluator& evaluator, int workers) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<Individual> population = init_population(config, rng);
    std::vector<Evaluated> cache(population.size());

    GAResult result;
    double best_so_far = -std::numeric_limits<double>::infinity();
    std::atomic<long> floored{0};

    for (int g_t = 1; g_t <= config.generations; ++g_t) {
        // Evaluate everything not carried over from the previous generation.
        std::vector<int> pending;
        for (size_t i = 0; i < population.size(); ++i) {
            if (!population[i].performance) pending.push_back(static_cast<int>(i));
        }
        auto eval_one = [&](int idx) {
            const Trajectory traj = evaluator(population[idx]);
            long local_floored = 0;
            const double r =
                performance(traj, config.p_final, config.p_process, &local_floored);
            floored += local_floored;
            population[idx].performance = r;
            cache[idx] = {traj.xi_z.back(), traj.times, traj.xi_z};
        };
        const int nworkers = std::max(1, workers);
        if (nworkers == 1 || pending.size() <= 1) {
            for (int idx : pending) eval_one(idx);
        } else {
            std::atomic<size_t> cursor{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < nworkers; ++w) {
                pool.emplace_back([&] {
                    for (size_t p = cursor++; p < pending.size(); p = cursor++) {
                        eval_one(pending[p]);
                    }
                });
            }
            for (auto& t : pool) t.join();
        }

        fitness_assign(population);

        std::vector<int> order(population.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return population[a].performance.value() > population[b].performance.value();
        });
        const int best_idx = order.front();

        GenerationRecord rec;
        rec.index = g_t;
        std::vector<double> perfs;
        for (size_t i = 0; i < population.size(); ++i) {
            rec.final_xi_z.push_back(cache[i].final_xi);
            perfs.push_back(population[i].performance.value());
        }
        const SummaryStats perf_stats = generation_stats(perfs);
        const SummaryStats xi_stats = generation_stats(rec.final_xi_z);
        rec.best_performance = perf_stats.max;
        rec.mean_performance = perf_stats.mean;
        rec.median_performance = perf_stats.median;
        rec.best_final_xi_z = cache[best_idx].final_xi;
        rec.mean_final_xi_z = xi_stats.mean;
        rec.median_final_xi_z = xi_stats.median;
        rec.best_genes = population[best_idx].genes;
        rec.best_trace_times = cache[best_idx].times;
        rec.best_trace_xi_z = cache[best_idx].xi_trace;
        result.records.push_back(std::move(rec));

        if (population[best_idx].performance.value() > best_so_far) {
            best_so_far = population[best_idx].performance.value();
            result.best = population[best_idx];
            result.best_trajectory.times = cache[best_idx].times;
            result.best_trajectory.xi_z = cache[best_idx].xi_trace;
        }

        if (g_t == config.generations) break;

        // Breed the next generation: elites carried verbatim with their
        // cached evaluations, remainder via select -> crossover -> mutate.
        std::vector<Individual> next;
        std::vector<Evaluated> next_cache;
        next.reserve(population.size());
        for (int e = 0; e < config.elite_count; ++e) {
            next.push_back(population[order[e]]);
            next_cache.push_back(cache[order[e]]);
        }
        while (next.size() < population.size()) {
            const int i = select_parent(population, rng);
            const int j = select_parent(population, rng);
            Individual child = crossover(population[i], population[j],
                                         population[i].fitness.value(),
                                         population[j].fitness.value(), config.c_s,
                                         config.f_h, rng);
            child = mutate(std::move(child), g_t, config.generations, config.m_s,
                           static_cast<int>(config.levels.size()), rng);
            next.push_back(std::move(child));
            next_cache.emplace_back();
        }
        population = std::move(next);
        cache = std::move(next_cache);
    }

    result.floored_xi_samples = floored.load();
    return result;
}

Evaluator make_lindblad_evaluator(const GAConfig& config) {
    const SpinOperators ops = build_spin_operators(config.n_spins);
    const DensityMatrix rho0 =
        coherent_spin_state(ops, 0.5 * std::numbers::pi, 0.0);
    auto props = std::make_shared<SegmentPropagatorSet>(
        ops, config.kappa, config.noise, config.levels,
        config.t_total / config.pulse_count, config.substeps);
    return [props, rho0](const Individual& ind) {
        return props->propagate(rho0, ind.genes);
    };
}

} // namespace spinctrl
