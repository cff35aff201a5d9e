#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spinctrl/ga.hpp"
#include "spinctrl/phase_space.hpp"

namespace spinctrl {

enum class ExperimentKind {
    Train,
    SweepPulses,
    SweepGears,
    SweepSize,
    SweepThermal,
    PhaseSpace,
};

std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

/// Amplitude tables for the gear sweep: exact tables for 3/5/7/9 gears,
/// uniform spacing over [1, -1] otherwise.
std::vector<double> gear_levels(int count);

struct ExperimentConfig {
    GAConfig ga;
    ExperimentKind kind = ExperimentKind::Train;
    std::vector<int> sweep_pulses = {25, 50, 100, 200};
    std::vector<int> sweep_gears = {3, 5, 7, 9};
    std::vector<int> sweep_sizes = {4, 10, 20};
    std::vector<double> sweep_n_th = {0.0, 0.1, 0.5, 1.0};
    int repetitions = 1;
    std::string out_dir = "out";
    int record_every = 1;
    int workers = 1;
    int grid_n_theta = 64;
    int grid_n_phi = 128;
    std::vector<double> sample_times;    // phase-space sample times
    std::vector<int> sequence;           // explicit control sequence
    std::string sequence_file;           // or best_sequence.csv from a train run

    void validate() const;  // throws std::invalid_argument
};

/// Parses the JSON config file; missing keys take defaults, unknown keys are
/// rejected. Throws std::invalid_argument on any validation failure.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const nlohmann::json& root);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Deterministic sub-seed for a sweep cell or repetition.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

void run_train(const ExperimentConfig& config);
void run_sweep(const ExperimentConfig& config);
void run_phase_space(const ExperimentConfig& config);

/// Dispatch on config.kind.
void run_experiment(const ExperimentConfig& config);

} // namespace spinctrl
