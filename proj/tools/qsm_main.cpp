// Command-line runner for the quantum sawtooth map simulator.
//
// Subcommands:
//   run <config>   execute a scenario described by a sectioned config file
//   evolve         one-off evolution with flags
//   sweep          saturation sweep over a geometric localization-length grid
//   selftest       oracle-equivalence suite
//
// Exit codes: 0 success, 2 usage error, 3 numerical-degradation threshold
// exceeded, 4 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "qsm/scenario.hpp"

namespace {

int finish(const qsm::ScenarioResult& result) {
    for (const auto& file : result.files) {
        std::cout << "wrote " << file.string() << "\n";
    }
    if (result.degraded_points > 0) {
        std::cerr << "warning: " << result.degraded_points
                  << " data point(s) hit numerical degradation\n";
        return 3;
    }
    return 0;
}

std::pair<int, int> parse_pair_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw qsm::UsageError("expected a pair 'i,j', got '" + text + "'");
    }
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::vector<int> parse_block_flag(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw qsm::UsageError("expected a block 'a..b', got '" + text + "'");
    }
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    std::vector<int> block;
    for (int q = a; q <= b; ++q) block.push_back(q);
    if (block.empty()) {
        throw qsm::UsageError("block range '" + text + "' is empty");
    }
    return block;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum sawtooth map simulator and entanglement diagnostics"};
    app.require_subcommand(1);

    // run
    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "run a scenario from a config file");
    cmd_run->add_option("config", config_path, "sectioned key-value config file")->required();

    // evolve
    qsm::Scenario evolve;
    evolve.kind = qsm::ScenarioKind::custom;
    std::int64_t evolve_m = 0;
    std::string evolve_pair;
    std::string evolve_block;
    std::string evolve_out;
    auto* cmd_evolve = app.add_subcommand("evolve", "single evolution run");
    cmd_evolve->add_option("--nq", evolve.n_q, "qubit count")->default_val(10);
    cmd_evolve->add_option("--K", evolve.K,
                           "kick parameter; the kick phase is (K/T)(theta-pi)^2, classical "
                           "chaos parameter 2K (default sqrt(2)/2)");
    cmd_evolve->add_option("--M", evolve_m, "kick period numerator, T = 2*pi*M/2^nq")->required();
    cmd_evolve->add_option("--steps", evolve.steps, "number of kicks recorded")->default_val(2000);
    cmd_evolve->add_option("--pair", evolve_pair, "qubit pair i,j for the concurrence series");
    cmd_evolve->add_option("--block", evolve_block, "qubit block a..b for the entropy series");
    cmd_evolve->add_option("--out", evolve_out, "output directory")->required();
    cmd_evolve->add_option("--seed", evolve.seed, "seed for seeded scenario states")
        ->default_val(0);
    cmd_evolve->add_option("--n0", evolve.n0, "initial momentum eigenstate")->default_val(0);
    cmd_evolve->add_option("--workers", evolve.workers, "worker threads (0 = hardware)")
        ->default_val(0);

    // sweep
    qsm::Scenario sweep;
    sweep.kind = qsm::ScenarioKind::fig3_saturation_vs_ell;
    std::string sweep_pairs = "1,2;1,3;1,4;1,5";
    std::string sweep_out;
    auto* cmd_sweep = app.add_subcommand("sweep", "saturation sweep over an ell grid");
    cmd_sweep->add_option("--nq", sweep.n_q, "qubit count")->default_val(10);
    cmd_sweep->add_option("--ell-min", sweep.ell_min, "smallest localization length")
        ->default_val(0.03);
    cmd_sweep->add_option("--ell-max", sweep.ell_max, "largest localization length")
        ->default_val(64.0);
    cmd_sweep->add_option("--points-per-decade", sweep.points_per_decade, "grid density")
        ->default_val(8);
    cmd_sweep->add_option("--pairs", sweep_pairs, "semicolon list of pairs, e.g. '1,2;1,3'");
    cmd_sweep
        ->add_option("--m-ref", sweep.m_ref,
                     "fixed M of the sweep (sets T; K varies with the ell target)")
        ->default_val(75);
    cmd_sweep
        ->add_option("--ensemble", sweep.ensemble,
                     "initial momentum eigenstates per grid point (median reported)")
        ->default_val(16);
    cmd_sweep->add_option("--out", sweep_out, "output directory")->required();
    cmd_sweep->add_option("--seed", sweep.seed, "seed for seeded scenario states")->default_val(0);
    cmd_sweep->add_option("--workers", sweep.workers, "worker threads (0 = hardware)")
        ->default_val(0);

    // selftest
    app.add_subcommand("selftest", "oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("run")) {
            return finish(qsm::run_scenario(qsm::parse_config(config_path)));
        }
        if (app.got_subcommand("evolve")) {
            evolve.m_values = {evolve_m};
            if (!evolve_pair.empty()) evolve.pairs = {parse_pair_flag(evolve_pair)};
            if (!evolve_block.empty()) evolve.blocks = {parse_block_flag(evolve_block)};
            evolve.out_dir = evolve_out;
            return finish(qsm::run_scenario(evolve));
        }
        if (app.got_subcommand("sweep")) {
            sweep.pairs.clear();
            std::string rest = sweep_pairs;
            while (!rest.empty()) {
                const auto semi = rest.find(';');
                sweep.pairs.push_back(parse_pair_flag(rest.substr(0, semi)));
                if (semi == std::string::npos) break;
                rest = rest.substr(semi + 1);
            }
            sweep.out_dir = sweep_out;
            return finish(qsm::run_scenario(sweep));
        }
        return qsm::run_selftest(std::cout) ? 0 : 1;
    } catch (const qsm::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qsm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qsm::NumericalDegradationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qsm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
