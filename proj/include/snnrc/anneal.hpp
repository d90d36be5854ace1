#pragma once

// Simulated-annealing architecture search that prunes internal edges.
//
// Each iteration n = 1, 2, ... removes one random internal edge from the
// current network, scores the candidate and accepts it with probability
// min(1, exp(-(f_new - f_old) / T(n))), T(n) = 1 / (scale * n). The search
// stops early once no internal edge is left.

#include "snnrc/topology.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace snnrc {

struct anneal_config {
    std::size_t n_steps = 1000;
    double temperature_scale = 50.0;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

double temperature(std::size_t iteration, double scale);
double acceptance_probability(double delta_f, double temperature);

struct anneal_record {
    std::size_t iteration = 0;
    /// NaN when the candidate could not be evaluated.
    double candidate_nrmse = 0.0;
    bool accepted = false;
    /// Internal edges of the current network after this iteration.
    std::size_t edge_count = 0;
    edge removed;
    std::string note;
};

/// Full search state; doubles as the resumable checkpoint.
struct anneal_state {
    std::size_t iteration = 0;
    reservoir_network current;
    double current_nrmse = 0.0;
    reservoir_network best;
    double best_nrmse = 0.0;
    double initial_nrmse = 0.0;
    bool exhausted = false;
    std::vector<anneal_record> trace;
};

using network_objective = std::function<double(const reservoir_network&)>;
/// Called after every iteration; returning false pauses the search.
using anneal_observer = std::function<bool(const anneal_state&)>;

/// Scores the initial network and prepares iteration 1.
anneal_state anneal_start(const reservoir_network& initial, const network_objective& objective);

/// Runs iterations until n_steps are done, the edges run out or the observer
/// asks to pause. Randomness for iteration n derives from (rng_seed, n) only,
/// so a paused state continues exactly like an uninterrupted run.
void anneal_continue(anneal_state& state, const anneal_config& config, const network_objective& objective,
                     const anneal_observer& observer = {});

anneal_state anneal(const reservoir_network& initial, const anneal_config& config, const network_objective& objective);

/// Re-applies the accepted removals of `trace` to `initial`.
reservoir_network replay(const reservoir_network& initial, const std::vector<anneal_record>& trace);

void write_trace_csv(std::ostream& os, const std::vector<anneal_record>& trace);

nlohmann::json to_json(const anneal_state& state);
anneal_state anneal_state_from_json(const nlohmann::json& j);

}  // namespace snnrc
