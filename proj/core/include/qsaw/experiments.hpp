#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsaw/params.hpp"

namespace qsaw {

// One CLI invocation = one experiment. Field defaults are the
// per-experiment defaults documented in the README.
struct ExperimentConfig {
    std::string experiment;  // lyapunov | classical-diffusion | anomalous-scan |
                             // quantum-evolve | localization | measure |
                             // fidelity | gate-verify | figures
    ParamSpec params;

    std::int64_t t = 50;           // evolution steps (quantum experiments)
    std::int64_t t_max = 10000;    // horizon (classical experiments)
    std::int64_t avg_lo = 0;       // time-average window for localization
    std::int64_t avg_hi = 0;
    std::int64_t n_traj = 10000;
    std::int64_t N_M = 5000;
    int dropped_bits = -1;         // -1 = two-stage automatic choice
    double epsilon = 0.0;
    std::string method = "direct"; // fidelity method
    std::int64_t n_samples = 0;
    int K_avg = 0;                 // >0: average over K_avg values of K
    double K_avg_lo = 1.4;
    double K_avg_hi = 1.5;
    std::vector<double> K_list;    // anomalous-scan targets

    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir = ".";
    std::string circuit_out;       // optional gate-list dump (gate-verify)
};

// Applies key/value pairs from a JSON config file on top of the given
// config (file values override flags). Throws ConfigError.
void apply_config_file(ExperimentConfig& config, const std::string& path);

// Runs one experiment, writing CSV/JSON outputs plus a .meta.json sidecar
// into config.out_dir. Returns the process exit status (0 = success);
// ConfigError maps to 2 and NumericalFailure to 3 at the CLI boundary.
int run_experiment(const ExperimentConfig& config);

struct FigureRecipe {
    std::string figure;
    std::string description;
    std::string command;
};

// The five reference invocations reproducing the published panels.
std::vector<FigureRecipe> figure_recipes();

}  // namespace qsaw
