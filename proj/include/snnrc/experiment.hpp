#pragma once

// Experiment description loaded from a single JSON document.
//
// Every object is parsed strictly: keys that do not belong to it are
// rejected. `to_json` writes the effective configuration with all defaults
// filled in, and parsing that echo yields the same configuration.

#include "snnrc/anneal.hpp"
#include "snnrc/pipeline.hpp"
#include "snnrc/readout.hpp"
#include "snnrc/reservoir.hpp"
#include "snnrc/timeseries.hpp"
#include "snnrc/topology.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace snnrc {

enum class task_kind { henon, mackey_glass };

struct series_spec {
    std::size_t length = 1000;
    /// Leading samples generated and then dropped.
    std::size_t discard = 0;
    henon_params henon;
    mackey_glass_params mackey_glass;
};

/// Families: erdos_renyi, ring_small_world, input_ring, handpicked_ring,
/// cluster_chains, linear_chains, file.
struct network_spec {
    std::string family = "handpicked_ring";
    std::size_t m = 100;
    std::size_t m_in = 50;
    std::size_t k = 1;
    double p = 0.0;
    std::size_t input_stride = 2;
    std::size_t n_chains = 25;
    std::size_t clusters_per_chain = 6;
    std::size_t cluster_size = 3;
    std::size_t chain_len = 10;
    std::string path;
    double payload = 2.0;
    double delay = 0.3;
};

struct split_spec {
    double train_fraction = 0.8;
    std::size_t washout = 20;
};

struct anneal_spec {
    std::size_t n_steps = 1000;
    double temperature_scale = 50.0;
    std::size_t checkpoint_every = 25;
};

struct experiment_config {
    task_kind task = task_kind::henon;
    series_spec series;
    network_spec network;
    simulation_config simulation;
    split_spec split;
    nrmse_norm normalization = nrmse_norm::std_dev;
    std::optional<std::uint64_t> seed;
    std::string output_dir;
    anneal_spec anneal;
    std::size_t sweep_seeds = 6;

    std::uint64_t require_seed() const;
};

experiment_config experiment_from_json(const nlohmann::json& j);
experiment_config load_experiment(const std::filesystem::path& path);
/// Effective configuration; output_dir is omitted so that bundles written to
/// different directories stay byte-identical.
nlohmann::json to_json(const experiment_config& config);

time_series make_series(const experiment_config& config);
reservoir_network make_network(const experiment_config& config, std::uint64_t seed);
task_pipeline make_pipeline(const experiment_config& config, time_series series);

}  // namespace snnrc
