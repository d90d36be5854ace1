#pragma once

// Subcommand bodies behind the `snnrc` CLI. Each writes its bundle into an
// existing output directory and throws config_error or pipeline_error.

#include "snnrc/experiment.hpp"

#include <filesystem>
#include <optional>

namespace snnrc {

namespace fs = std::filesystem;

/// series.csv + config.json
void cmd_gen_series(const experiment_config& config, const fs::path& out);

/// network.json + config.json
void cmd_build_net(const experiment_config& config, const fs::path& out);

struct run_options {
    /// Also write counts.csv and membrane.csv.
    bool dump_traces = false;
};

/// config.json, network.json, predictions.csv, attractor.csv, score.json,
/// spike_stats.json, model.json. Returns the task result.
task_result cmd_run(const experiment_config& config, const fs::path& out, const run_options& options = {});

struct metalearn_options {
    /// Continue from out/checkpoint.json.
    bool resume = false;
    /// Pause once this many iterations have been completed in total.
    std::optional<std::size_t> stop_after;
};

/// config.json, initial_network.json, checkpoint.json, trace.csv and, when the
/// search finishes, best_network.json, final_network.json and score.json.
anneal_state cmd_metalearn(const experiment_config& config, const fs::path& out, const metalearn_options& options = {});

struct sweep_row {
    std::uint64_t seed = 0;
    double nrmse_std = 0.0;
    double nrmse_range = 0.0;
    std::string status = "ok";
};

struct sweep_result {
    std::vector<sweep_row> rows;
    double mean = 0.0;
    double std_dev = 0.0;
};

/// sweep.csv + config.json. Seeds are seed, seed+1, ...; rows that fail are
/// kept with their error message and excluded from the summary.
sweep_result cmd_sweep(const experiment_config& config, const fs::path& out, std::size_t n_seeds);

}  // namespace snnrc
