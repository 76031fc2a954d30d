#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsaw/errors.hpp"
#include "qsaw/experiments.hpp"
#include "qsaw/params.hpp"

namespace {

// Shorthand-capable numeric flags ("sqrt2", "sqrt3", plain decimals) are
// collected as strings and resolved after parsing.
struct RawFlags {
    std::string K, k, T;
    std::string epsilon, K_avg_lo, K_avg_hi;
    std::vector<std::string> K_list;
    std::string boundary;
    std::string config_path;
};

void wire_subcommand(CLI::App* sub, qsaw::ExperimentConfig& config, RawFlags& raw) {
    sub->add_option("--K", raw.K, "classical chaos parameter (accepts sqrt<m>)");
    sub->add_option("--k", raw.k, "quantum kick strength (accepts sqrt<m>)");
    sub->add_option("--T", raw.T, "kick period (accepts sqrt<m>)");
    sub->add_option("--n", config.params.n, "qubit count");
    sub->add_option("--L", config.params.L, "torus size in units of 2*pi");
    sub->add_option("--m0", config.params.m0, "initial momentum level");
    sub->add_option("--boundary", raw.boundary, "torus | cylinder");

    sub->add_option("--t", config.t, "evolution steps");
    sub->add_option("--t-max", config.t_max, "classical horizon");
    sub->add_option("--avg-lo", config.avg_lo, "analysis window lower edge");
    sub->add_option("--avg-hi", config.avg_hi, "analysis window upper edge");
    sub->add_option("--n-traj", config.n_traj, "ensemble size");
    sub->add_option("--N-M", config.N_M, "measurement runs");
    sub->add_option("--dropped-bits", config.dropped_bits,
                    "coarse-grained bits (-1 = automatic)");
    sub->add_option("--epsilon", raw.epsilon, "kick perturbation");
    sub->add_option("--method", config.method,
                    "direct | scattering-exact | scattering-sampled");
    sub->add_option("--n-samples", config.n_samples, "ancilla samples per batch");
    sub->add_option("--K-avg", config.K_avg, "number of K values to average");
    sub->add_option("--K-avg-lo", raw.K_avg_lo, "K averaging window lower edge");
    sub->add_option("--K-avg-hi", raw.K_avg_hi, "K averaging window upper edge");
    sub->add_option("--K-list", raw.K_list, "scan targets (accepts sqrt<m>)");
    sub->add_option("--circuit-out", config.circuit_out, "gate-list dump path");

    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--threads", config.threads, "worker threads");
    sub->add_option("--out-dir", config.out_dir, "output directory");
    sub->add_option("--config", raw.config_path,
                    "JSON config file (values override flags)");
}

void resolve_flags(qsaw::ExperimentConfig& config, const RawFlags& raw) {
    if (!raw.K.empty()) config.params.K = qsaw::parse_param_value(raw.K);
    if (!raw.k.empty()) config.params.k = qsaw::parse_param_value(raw.k);
    if (!raw.T.empty()) config.params.T = qsaw::parse_param_value(raw.T);
    if (!raw.epsilon.empty()) config.epsilon = qsaw::parse_param_value(raw.epsilon);
    if (!raw.K_avg_lo.empty()) config.K_avg_lo = qsaw::parse_param_value(raw.K_avg_lo);
    if (!raw.K_avg_hi.empty()) config.K_avg_hi = qsaw::parse_param_value(raw.K_avg_hi);
    for (const auto& item : raw.K_list)
        config.K_list.push_back(qsaw::parse_param_value(item));

    if (!raw.boundary.empty()) {
        config.params.boundary = qsaw::boundary_from_string(raw.boundary);
    } else if (config.experiment == "lyapunov" ||
               config.experiment == "classical-diffusion" ||
               config.experiment == "anomalous-scan") {
        config.params.boundary = qsaw::BoundaryMode::Cylinder;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sawtooth-map simulation laboratory"};
    app.require_subcommand(1);

    qsaw::ExperimentConfig config;
    RawFlags raw;

    const std::vector<std::pair<std::string, std::string>> experiments = {
        {"lyapunov", "maximum Lyapunov exponent from the tangent map"},
        {"classical-diffusion", "ensemble diffusion fit and Gaussian profile check"},
        {"anomalous-scan", "anomalous diffusion exponent over a K list"},
        {"quantum-evolve", "spectral evolution with moment series and state dump"},
        {"localization", "time/parameter-averaged momentum profile and length fits"},
        {"measure", "simulated projective measurement histogram and fits"},
        {"fidelity", "Loschmidt echo, direct or through the scattering circuit"},
        {"gate-verify", "gate circuit vs spectral operator cross-check"},
        {"figures", "print the reference invocations for the published panels"},
    };
    for (const auto& [name, description] : experiments) {
        CLI::App* sub = app.add_subcommand(name, description);
        if (name != "figures") wire_subcommand(sub, config, raw);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        config.experiment = app.get_subcommands().front()->get_name();
        resolve_flags(config, raw);
        if (!raw.config_path.empty())
            qsaw::apply_config_file(config, raw.config_path);
        return qsaw::run_experiment(config);
    } catch (const qsaw::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const qsaw::NumericalFailure& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
