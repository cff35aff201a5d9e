#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinctrl/runner.hpp"

namespace {

int default_workers() {
    if (const char* env = std::getenv("SPINCTRL_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin squeezing control experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    int workers = default_workers();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed, "override RNG seed");
        cmd->add_option("--out", out_dir, "override output directory");
        cmd->add_option("--workers", workers, "evaluation worker threads");
    };

    CLI::App* train = app.add_subcommand("train", "GA training run");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
    CLI::App* phase = app.add_subcommand("phase-space", "Husimi/Wigner field dumps");
    CLI::App* validate = app.add_subcommand("validate-config", "parse and echo a config");
    for (auto* cmd : {train, sweep, phase, validate}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    spinctrl::ExperimentConfig config;
    try {
        if (!config_path.empty()) {
            config = spinctrl::load_config(config_path);
        }
        if (seed) config.ga.seed = *seed;
        if (out_dir) config.out_dir = *out_dir;
        config.workers = workers;

        if (train->parsed()) {
            config.kind = spinctrl::ExperimentKind::Train;
        } else if (phase->parsed()) {
            config.kind = spinctrl::ExperimentKind::PhaseSpace;
        } else if (sweep->parsed()) {
            // A sweep config must name one of the sweep kinds.
            switch (config.kind) {
                case spinctrl::ExperimentKind::SweepPulses:
                case spinctrl::ExperimentKind::SweepGears:
                case spinctrl::ExperimentKind::SweepSize:
                case spinctrl::ExperimentKind::SweepThermal:
                    break;
                default:
                    throw std::invalid_argument(
                        "sweep requires a config with kind sweep-pulses, sweep-gears, "
                        "sweep-size or sweep-thermal");
            }
        }
        config.validate();
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    if (validate->parsed()) {
        std::cout << spinctrl::config_to_json(config).dump(2) << "\n";
        return 0;
    }

    try {
        spinctrl::run_experiment(config);
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
