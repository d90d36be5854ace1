// snnrc: spiking reservoir computing experiments from JSON configs.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 pipeline error.

#include "snnrc/commands.hpp"
#include "snnrc/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int exit_config = 1;
constexpr int exit_pipeline = 2;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spiking-neural-network reservoir computing on chaotic time series"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string norm;
    app.add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Overrides the config seed");
    app.add_option("--out", out_dir, "Existing output directory");
    app.add_option("--nrmse-norm", norm, "NRMSE normalization")->check(CLI::IsMember({"std", "range"}));

    auto* gen = app.add_subcommand("gen-series", "Generate the task time series");
    auto* build = app.add_subcommand("build-net", "Construct and serialize the reservoir network");
    auto* run = app.add_subcommand("run", "Run the prediction task and write the result bundle");
    bool dump_traces = false;
    run->add_flag("--dump-traces", dump_traces, "Also write per-window counts and membrane traces");
    auto* meta = app.add_subcommand("metalearn", "Simulated-annealing edge pruning");
    bool resume = false;
    std::optional<std::size_t> stop_after;
    meta->add_flag("--resume", resume, "Continue from <out>/checkpoint.json");
    meta->add_option("--stop-after", stop_after, "Pause after this many iterations");
    auto* sweep = app.add_subcommand("sweep", "Score the network family over consecutive seeds");
    std::optional<std::size_t> n_seeds;
    sweep->add_option("--n-seeds", n_seeds, "Number of seeds (default: config sweep.n_seeds)");
    for (auto* sub : {gen, build, run, meta, sweep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        snnrc::experiment_config config = snnrc::load_experiment(config_path);
        if (seed) config.seed = seed;
        if (!norm.empty()) config.normalization = snnrc::nrmse_norm_from_string(norm);
        if (!out_dir.empty()) config.output_dir = out_dir;
        const snnrc::fs::path out = config.output_dir;

        if (gen->parsed()) {
            snnrc::cmd_gen_series(config, out);
        } else if (build->parsed()) {
            snnrc::cmd_build_net(config, out);
        } else if (run->parsed()) {
            const auto result = snnrc::cmd_run(config, out, {dump_traces});
            std::cout << "nrmse_std=" << result.std_score.nrmse << " nrmse_range=" << result.range_score.nrmse << '\n';
        } else if (meta->parsed()) {
            const auto state = snnrc::cmd_metalearn(config, out, {resume, stop_after});
            std::cout << "iterations=" << state.iteration << " initial_nrmse=" << state.initial_nrmse
                      << " final_nrmse=" << state.current_nrmse << " best_nrmse=" << state.best_nrmse << '\n';
        } else if (sweep->parsed()) {
            const auto result = snnrc::cmd_sweep(config, out, n_seeds.value_or(config.sweep_seeds));
            std::cout << "mean=" << result.mean << " std=" << result.std_dev << '\n';
        }
    } catch (const snnrc::config_error& e) {
        std::cerr << "snnrc: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "snnrc: pipeline error: " << e.what() << '\n';
        return exit_pipeline;
    }
    return 0;
}
