#include "spinctrl/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "spinctrl/squeezing.hpp"

namespace spinctrl {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;

    CsvWriter(const std::filesystem::path& path, const std::string& header) {
        out.open(path);
        if (!out) {
            throw std::runtime_error("cannot open output file: " + path.string());
        }
        out << header << "\n";
    }

    template <typename... Args>
    void row(const Args&... args) {
        bool first = true;
        auto emit = [&](const auto& v) {
            if (!first) out << ",";
            first = false;
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                out << fmt17(v);
            } else {
                out << v;
            }
        };
        (emit(args), ...);
        out << "\n";
        if (!out) throw std::runtime_error("write failure");
    }
};

void write_field(const std::filesystem::path& path, const PhaseField& field) {
    CsvWriter csv(path, "theta,phi,value");
    for (int i = 0; i < field.grid.n_theta; ++i) {
        for (int k = 0; k < field.grid.n_phi; ++k) {
            csv.row(field.grid.theta(i), field.grid.phi(k), field.values(i, k));
        }
    }
}

void write_config_echo(const ExperimentConfig& config) {
    std::ofstream out(std::filesystem::path(config.out_dir) / "config_echo.json");
    if (!out) throw std::runtime_error("cannot write config echo");
    out << config_to_json(config).dump(2) << "\n";
}

/// Generations whose traces get emitted: every record_every-th plus the last.
bool is_recorded(int g_t, int total, int record_every) {
    return g_t == total || (g_t - 1) % record_every == 0;
}

std::vector<int> read_sequence_csv(const std::filesystem::path& path,
                                   const std::vector<double>& levels) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file: " + path.string());
    std::string line;
    std::getline(in, line);  // header
    std::vector<int> sequence;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double idx, t_start, omega;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &idx, &t_start, &omega) != 3) {
            throw std::runtime_error("malformed sequence row: " + line);
        }
        int best = -1;
        for (size_t l = 0; l < levels.size(); ++l) {
            if (best < 0 || std::abs(levels[l] - omega) < std::abs(levels[best] - omega)) {
                best = static_cast<int>(l);
            }
        }
        if (best < 0 || std::abs(levels[best] - omega) > 1e-9) {
            throw std::runtime_error("sequence amplitude not in level table: " + line);
        }
        sequence.push_back(best);
    }
    return sequence;
}

} // namespace

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Train: return "train";
        case ExperimentKind::SweepPulses: return "sweep-pulses";
        case ExperimentKind::SweepGears: return "sweep-gears";
        case ExperimentKind::SweepSize: return "sweep-size";
        case ExperimentKind::SweepThermal: return "sweep-thermal";
        case ExperimentKind::PhaseSpace: return "phase-space";
    }
    throw std::logic_error("unreachable");
}

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::Train, ExperimentKind::SweepPulses, ExperimentKind::SweepGears,
          ExperimentKind::SweepSize, ExperimentKind::SweepThermal,
          ExperimentKind::PhaseSpace}) {
        if (kind_name(k) == name) return k;
    }
    throw std::invalid_argument("unknown experiment kind: " + name);
}

std::vector<double> gear_levels(int count) {
    switch (count) {
        case 3: return {1.0, 0.0, -1.0};
        case 5: return {1.0, 0.5, 0.0, -0.5, -1.0};
        case 7: return {1.0, 0.67, 0.33, 0.0, -0.33, -0.67, -1.0};
        case 9: return {1.0, 0.75, 0.5, 0.25, 0.0, -0.25, -0.5, -0.75, -1.0};
        default: break;
    }
    if (count < 2) throw std::invalid_argument("gear count must be >= 2");
    std::vector<double> levels(count);
    for (int i = 0; i < count; ++i) {
        levels[i] = 1.0 - 2.0 * i / (count - 1);
    }
    return levels;
}

void ExperimentConfig::validate() const {
    ga.validate();
    if (repetitions < 1) throw std::invalid_argument("repetitions < 1");
    if (record_every < 1) throw std::invalid_argument("record_every < 1");
    if (workers < 1) throw std::invalid_argument("workers < 1");
    if (grid_n_theta < 2 || grid_n_phi < 2) throw std::invalid_argument("grid too small");
    switch (kind) {
        case ExperimentKind::SweepPulses:
            if (sweep_pulses.empty()) throw std::invalid_argument("empty pulse sweep list");
            break;
        case ExperimentKind::SweepGears:
            if (sweep_gears.empty()) throw std::invalid_argument("empty gear sweep list");
            break;
        case ExperimentKind::SweepSize:
            if (sweep_sizes.empty()) throw std::invalid_argument("empty size sweep list");
            break;
        case ExperimentKind::SweepThermal:
            if (sweep_n_th.empty()) throw std::invalid_argument("empty thermal sweep list");
            break;
        default:
            break;
    }
    for (int idx : sequence) {
        if (idx < 0 || idx >= static_cast<int>(ga.levels.size())) {
            throw std::invalid_argument("sequence index out of level table range");
        }
    }
}

namespace {

template <typename T>
void read_key(const json& obj, const std::string& key, T& target) {
    if (obj.contains(key)) target = obj.at(key).get<T>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "' in " + where);
        }
    }
}

} // namespace

ExperimentConfig config_from_json(const json& root) {
    reject_unknown(root, {"ga", "experiment"}, "top level");
    ExperimentConfig config;

    if (root.contains("ga")) {
        const json& g = root.at("ga");
        reject_unknown(g,
                       {"population_size", "generations", "c_s", "f_h", "m_s", "p_final",
                        "p_process", "elite_count", "levels", "pulse_count", "t_total",
                        "n_spins", "kappa", "gamma", "gamma_z", "n_th", "seed", "substeps"},
                       "ga");
        read_key(g, "population_size", config.ga.population_size);
        read_key(g, "generations", config.ga.generations);
        read_key(g, "c_s", config.ga.c_s);
        read_key(g, "f_h", config.ga.f_h);
        read_key(g, "m_s", config.ga.m_s);
        read_key(g, "p_final", config.ga.p_final);
        read_key(g, "p_process", config.ga.p_process);
        read_key(g, "elite_count", config.ga.elite_count);
        read_key(g, "levels", config.ga.levels);
        read_key(g, "pulse_count", config.ga.pulse_count);
        read_key(g, "t_total", config.ga.t_total);
        read_key(g, "n_spins", config.ga.n_spins);
        read_key(g, "kappa", config.ga.kappa);
        read_key(g, "gamma", config.ga.noise.gamma);
        read_key(g, "gamma_z", config.ga.noise.gamma_z);
        read_key(g, "n_th", config.ga.noise.n_th);
        read_key(g, "seed", config.ga.seed);
        read_key(g, "substeps", config.ga.substeps);
    }
    if (root.contains("experiment")) {
        const json& e = root.at("experiment");
        reject_unknown(e,
                       {"kind", "sweep_pulses", "sweep_gears", "sweep_sizes", "sweep_n_th",
                        "repetitions", "out_dir", "record_every", "workers", "grid_n_theta",
                        "grid_n_phi", "sample_times", "sequence", "sequence_file"},
                       "experiment");
        if (e.contains("kind")) config.kind = kind_from_name(e.at("kind").get<std::string>());
        read_key(e, "sweep_pulses", config.sweep_pulses);
        read_key(e, "sweep_gears", config.sweep_gears);
        read_key(e, "sweep_sizes", config.sweep_sizes);
        read_key(e, "sweep_n_th", config.sweep_n_th);
        read_key(e, "repetitions", config.repetitions);
        read_key(e, "out_dir", config.out_dir);
        read_key(e, "record_every", config.record_every);
        read_key(e, "workers", config.workers);
        read_key(e, "grid_n_theta", config.grid_n_theta);
        read_key(e, "grid_n_phi", config.grid_n_phi);
        read_key(e, "sample_times", config.sample_times);
        read_key(e, "sequence", config.sequence);
        read_key(e, "sequence_file", config.sequence_file);
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config parse error: ") + err.what());
    }
    return config_from_json(root);
}

json config_to_json(const ExperimentConfig& config) {
    json g{{"population_size", config.ga.population_size},
           {"generations", config.ga.generations},
           {"c_s", config.ga.c_s},
           {"f_h", config.ga.f_h},
           {"m_s", config.ga.m_s},
           {"p_final", config.ga.p_final},
           {"p_process", config.ga.p_process},
           {"elite_count", config.ga.elite_count},
           {"levels", config.ga.levels},
           {"pulse_count", config.ga.pulse_count},
           {"t_total", config.ga.t_total},
           {"n_spins", config.ga.n_spins},
           {"kappa", config.ga.kappa},
           {"gamma", config.ga.noise.gamma},
           {"gamma_z", config.ga.noise.gamma_z},
           {"n_th", config.ga.noise.n_th},
           {"seed", config.ga.seed},
           {"substeps", config.ga.substeps}};
    json e{{"kind", kind_name(config.kind)},
           {"sweep_pulses", config.sweep_pulses},
           {"sweep_gears", config.sweep_gears},
           {"sweep_sizes", config.sweep_sizes},
           {"sweep_n_th", config.sweep_n_th},
           {"repetitions", config.repetitions},
           {"out_dir", config.out_dir},
           {"record_every", config.record_every},
           {"workers", config.workers},
           {"grid_n_theta", config.grid_n_theta},
           {"grid_n_phi", config.grid_n_phi},
           {"sample_times", config.sample_times},
           {"sequence", config.sequence},
           {"sequence_file", config.sequence_file}};
    return json{{"ga", g}, {"experiment", e}};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    // splitmix64 over a simple combination; stable across platforms.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (a + 1) +
                      0xBF58476D1CE4E5B9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void run_train(const ExperimentConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    write_config_echo(config);
    const std::filesystem::path out(config.out_dir);

    const GAResult result = run_ga(config.ga, make_lindblad_evaluator(config.ga),
                                   config.workers);

    CsvWriter gens(out / "generations.csv",
                   "generation,best_R,mean_R,median_R,best_final_xi_z,mean_final_xi_z,"
                   "median_final_xi_z");
    CsvWriter pop(out / "population_final_xi.csv", "generation,individual,final_xi_z");
    for (const auto& rec : result.records) {
        gens.row(rec.index, rec.best_performance, rec.mean_performance,
                 rec.median_performance, rec.best_final_xi_z, rec.mean_final_xi_z,
                 rec.median_final_xi_z);
        for (size_t i = 0; i < rec.final_xi_z.size(); ++i) {
            pop.row(rec.index, i, rec.final_xi_z[i]);
        }
        if (is_recorded(rec.index, config.ga.generations, config.record_every)) {
            char name[64];
            std::snprintf(name, sizeof(name), "best_trajectory_gen_%04d.csv", rec.index);
            CsvWriter traj(out / name, "time,xi_z");
            for (size_t s = 0; s < rec.best_trace_times.size(); ++s) {
                traj.row(rec.best_trace_times[s], rec.best_trace_xi_z[s]);
            }
        }
    }

    CsvWriter seq(out / "best_sequence.csv", "segment_index,t_start,omega");
    const double dt = config.ga.t_total / config.ga.pulse_count;
    for (size_t k = 0; k < result.best.genes.size(); ++k) {
        seq.row(k, k * dt, config.ga.levels[static_cast<size_t>(result.best.genes[k])]);
    }

    if (result.floored_xi_samples > 0) {
        std::ofstream report(out / "run_report.txt");
        report << "xi_z samples clamped at the 1e-12 reward floor: "
               << result.floored_xi_samples << "\n";
    }
}

void run_sweep(const ExperimentConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    write_config_echo(config);
    const std::filesystem::path out(config.out_dir);

    struct Cell {
        double value;
        std::string label;
        GAConfig ga;
    };
    std::vector<Cell> cells;
    auto base = config.ga;
    switch (config.kind) {
        case ExperimentKind::SweepPulses:
            for (int m : config.sweep_pulses) {
                auto ga = base;
                ga.pulse_count = m;
                cells.push_back({static_cast<double>(m), "pulses_" + std::to_string(m), ga});
            }
            break;
        case ExperimentKind::SweepGears:
            for (int gcount : config.sweep_gears) {
                auto ga = base;
                ga.levels = gear_levels(gcount);
                cells.push_back(
                    {static_cast<double>(gcount), "gears_" + std::to_string(gcount), ga});
            }
            break;
        case ExperimentKind::SweepSize:
            for (int n : config.sweep_sizes) {
                auto ga = base;
                ga.n_spins = n;
                cells.push_back({static_cast<double>(n), "size_" + std::to_string(n), ga});
            }
            break;
        case ExperimentKind::SweepThermal:
            for (size_t i = 0; i < config.sweep_n_th.size(); ++i) {
                auto ga = base;
                ga.noise.n_th = config.sweep_n_th[i];
                cells.push_back({config.sweep_n_th[i], "nth_" + std::to_string(i), ga});
            }
            break;
        default:
            throw std::invalid_argument("run_sweep: not a sweep kind");
    }

    CsvWriter aggregate(out / "aggregate.csv",
                        "sweep_value,generation,time,mean_xi_z,var_xi_z");
    CsvWriter summary(out / "summary.csv",
                      "sweep_value,mean_final_xi_z,var_final_xi_z");

    for (size_t c = 0; c < cells.size(); ++c) {
        std::vector<GAResult> reps;
        for (int r = 0; r < config.repetitions; ++r) {
            auto ga = cells[c].ga;
            ga.seed = derive_seed(config.ga.seed, c, static_cast<std::uint64_t>(r));
            reps.push_back(run_ga(ga, make_lindblad_evaluator(ga), config.workers));

            char name[96];
            std::snprintf(name, sizeof(name), "trace_%s_rep%02d.csv",
                          cells[c].label.c_str(), r);
            CsvWriter trace(out / name, "generation,time,xi_z");
            for (const auto& rec : reps.back().records) {
                if (!is_recorded(rec.index, ga.generations, config.record_every)) continue;
                for (size_t s = 0; s < rec.best_trace_times.size(); ++s) {
                    trace.row(rec.index, rec.best_trace_times[s], rec.best_trace_xi_z[s]);
                }
            }
        }

        // Mean/variance across repetitions at matched (generation, time).
        for (const auto& rec : reps.front().records) {
            if (!is_recorded(rec.index, cells[c].ga.generations, config.record_every)) {
                continue;
            }
            const size_t samples = rec.best_trace_times.size();
            for (size_t s = 0; s < samples; ++s) {
                double mean = 0.0;
                for (const auto& rep : reps) {
                    mean += rep.records[rec.index - 1].best_trace_xi_z[s];
                }
                mean /= reps.size();
                double var = 0.0;
                for (const auto& rep : reps) {
                    const double d = rep.records[rec.index - 1].best_trace_xi_z[s] - mean;
                    var += d * d;
                }
                var /= reps.size();
                aggregate.row(cells[c].value, rec.index, rec.best_trace_times[s], mean, var);
            }
        }

        double mean_final = 0.0;
        for (const auto& rep : reps) mean_final += rep.records.back().best_trace_xi_z.back();
        mean_final /= reps.size();
        double var_final = 0.0;
        for (const auto& rep : reps) {
            const double d = rep.records.back().best_trace_xi_z.back() - mean_final;
            var_final += d * d;
        }
        var_final /= reps.size();
        summary.row(cells[c].value, mean_final, var_final);
    }
}

void run_phase_space(const ExperimentConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    write_config_echo(config);
    const std::filesystem::path out(config.out_dir);

    std::vector<int> sequence = config.sequence;
    if (sequence.empty() && !config.sequence_file.empty()) {
        sequence = read_sequence_csv(config.sequence_file, config.ga.levels);
    }

    const SpinOperators ops = build_spin_operators(config.ga.n_spins);
    const DensityMatrix rho0 = coherent_spin_state(ops, 0.5 * std::numbers::pi, 0.0);
    const SphereGrid grid{config.grid_n_theta, config.grid_n_phi};

    write_field(out / "husimi_initial.csv", husimi_q(rho0, ops, grid));
    write_field(out / "wigner_initial.csv", wigner_function(rho0, ops, grid));

    if (config.sample_times.empty()) return;
    if (sequence.empty()) {
        throw std::invalid_argument(
            "phase-space: sample_times given but no sequence or sequence_file");
    }

    PulseSchedule schedule{config.ga.t_total, config.ga.levels, sequence};
    const Trajectory traj = evolve_sequence(rho0, schedule, ops, config.ga.kappa,
                                            config.ga.noise, config.ga.substeps);
    const double dt = schedule.segment_dt();
    for (double t : config.sample_times) {
        const int k = std::clamp(static_cast<int>(std::lround(t / dt)), 0,
                                 schedule.segments());
        char suffix[48];
        std::snprintf(suffix, sizeof(suffix), "_t%.4f.csv", k * dt);
        write_field(out / ("husimi" + std::string(suffix)),
                    husimi_q(traj.states[static_cast<size_t>(k)], ops, grid));
        write_field(out / ("wigner" + std::string(suffix)),
                    wigner_function(traj.states[static_cast<size_t>(k)], ops, grid));
    }
}

void run_experiment(const ExperimentConfig& config) {
    config.validate();
    switch (config.kind) {
        case ExperimentKind::Train:
            run_train(config);
            break;
        case ExperimentKind::PhaseSpace:
            run_phase_space(config);
            break;
        default:
            run_sweep(config);
            break;
    }
}

} // namespace spinctrl
