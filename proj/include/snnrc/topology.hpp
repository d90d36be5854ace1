#pragma once

// Reservoir graph families and the edge mutation used by architecture search.
//
// Edges are directed. Input neurons always occupy ids 0..M_in-1 so that a
// serialized network is stable under relabelling.

#include "snnrc/spike_queue.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace snnrc {

enum class edge_class { input_fanin, one_to_one, internal };

std::string_view to_string(edge_class c);
edge_class edge_class_from_string(std::string_view s);

struct edge {
    neuron_id src = 0;
    neuron_id dst = 0;
    double payload = 2.0;
    double delay = 0.3;
    edge_class kind = edge_class::internal;

    friend bool operator==(const edge&, const edge&) = default;
};

struct reservoir_network {
    std::size_t n_neurons = 0;
    std::vector<neuron_id> input_neurons;
    std::vector<edge> edges;

    /// Throws config_error when an invariant is violated (self-loop, id out
    /// of range, duplicate input, M_in > M).
    void validate() const;

    std::size_t count(edge_class c) const;
    std::size_t in_degree(neuron_id n) const;
    std::size_t out_degree(neuron_id n) const;

    friend bool operator==(const reservoir_network&, const reservoir_network&) = default;
};

/// Payload and delay stamped on every edge of a constructed network.
struct edge_defaults {
    double payload = 2.0;
    double delay = 0.3;
};

/// Directed G(m, p): every ordered pair i != j independently. The first
/// `m_in` ids are designated inputs.
reservoir_network erdos_renyi(std::size_t m, double p, std::uint64_t seed, std::size_t m_in = 0,
                              edge_defaults defaults = {});

/// Ring lattice with k neighbours per side (both directions) plus directed
/// shortcuts added with probability p_add for every non-ring ordered pair.
/// With `input_stride` > 0 every `input_stride`-th ring position is an input;
/// ids are assigned so those inputs come first while ring order is kept.
reservoir_network ring_small_world(std::size_t m, std::size_t k_neighbors, double p_add, std::uint64_t seed,
                                   std::size_t input_stride = 0, edge_defaults defaults = {});

/// Outer layer of m_in inputs, each feeding one inner neuron one-to-one; the
/// inner neurons form a ring with k neighbours per side plus random shortcuts.
/// Inputs receive no edges.
reservoir_network input_ring(std::size_t m_in, std::size_t k_neighbors, double p_add, std::uint64_t seed,
                             edge_defaults defaults = {});

/// input_ring with k = 1 and no shortcuts.
reservoir_network handpicked_ring(std::size_t m_in, edge_defaults defaults = {});

/// Per chain: one input feeding every neuron of the first cluster, then full
/// bipartite links between consecutive clusters.
reservoir_network cluster_chains(std::size_t n_chains, std::size_t clusters_per_chain, std::size_t cluster_size,
                                 edge_defaults defaults = {});

/// m_in disjoint paths of chain_len neurons headed by the inputs.
reservoir_network linear_chains(std::size_t m_in, std::size_t chain_len, edge_defaults defaults = {});

struct edge_removal {
    reservoir_network network;
    edge removed;
    std::size_t removed_index = 0;
};

/// Removes one uniformly chosen internal edge. Throws search_exhausted when
/// there is none.
edge_removal remove_random_internal_edge(const reservoir_network& net, std::uint64_t seed);

class search_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Removes the first edge equal to `e`; returns nullopt when absent.
std::optional<reservoir_network> remove_edge(const reservoir_network& net, const edge& e);

/// Relabels neurons so that `inputs` become ids 0..k-1 (in the given order)
/// and the remaining neurons keep their relative order after them.
reservoir_network designate_inputs(const reservoir_network& net, const std::vector<neuron_id>& inputs);

nlohmann::json to_json(const reservoir_network& net);
reservoir_network network_from_json(const nlohmann::json& j);

}  // namespace snnrc
