#include "snnrc/topology.hpp"

#include "snnrc/error.hpp"
#include "snnrc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <string>

namespace snnrc {

std::string_view to_string(edge_class c)
{
    switch (c) {
    case edge_class::input_fanin: return "input-fanin";
    case edge_class::one_to_one: return "one-to-one";
    case edge_class::internal: return "internal";
    }
    return "internal";
}

edge_class edge_class_from_string(std::string_view s)
{
    if (s == "input-fanin") return edge_class::input_fanin;
    if (s == "one-to-one") return edge_class::one_to_one;
    if (s == "internal") return edge_class::internal;
    throw config_error{"unknown edge class '" + std::string{s} + "'"};
}

void reservoir_network::validate() const
{
    if (input_neurons.size() > n_neurons) throw config_error{"network has more inputs than neurons"};
    std::vector<bool> seen(n_neurons, false);
    for (neuron_id i : input_neurons) {
        if (i >= n_neurons) throw config_error{"input neuron id out of range"};
        if (seen[i]) throw config_error{"duplicate input neuron " + std::to_string(i)};
        seen[i] = true;
    }
    for (const edge& e : edges) {
        if (e.src >= n_neurons || e.dst >= n_neurons) throw config_error{"edge endpoint out of range"};
        if (e.src == e.dst) throw config_error{"self-loop on neuron " + std::to_string(e.src)};
        if (!(e.delay >= 0.0)) throw config_error{"edge delay must be non-negative"};
    }
}

std::size_t reservoir_network::count(edge_class c) const
{
    return static_cast<std::size_t>(std::ranges::count(edges, c, &edge::kind));
}

std::size_t reservoir_network::in_degree(neuron_id n) const
{
    return static_cast<std::size_t>(std::ranges::count(edges, n, &edge::dst));
}

std::size_t reservoir_network::out_degree(neuron_id n) const
{
    return static_cast<std::size_t>(std::ranges::count(edges, n, &edge::src));
}

namespace {

std::vector<neuron_id> first_ids(std::size_t k)
{
    std::vector<neuron_id> ids(k);
    std::iota(ids.begin(), ids.end(), neuron_id{0});
    return ids;
}

edge make_edge(std::size_t src, std::size_t dst, edge_class kind, const edge_defaults& d)
{
    return {static_cast<neuron_id>(src), static_cast<neuron_id>(dst), d.payload, d.delay, kind};
}

void check_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw config_error{"probability must lie in [0, 1]"};
}

// Ring lattice over `nodes` (in ring order) plus random shortcuts between
// ordered pairs that are not already ring neighbours.
void add_ring(std::vector<edge>& edges, const std::vector<neuron_id>& nodes, std::size_t k, double p_add, rng& gen,
              const edge_defaults& d)
{
    const std::size_t m = nodes.size();
    std::vector<std::vector<bool>> linked(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t off = 1; off <= k; ++off) {
            for (std::size_t j : {(i + off) % m, (i + m - off) % m}) {
                if (j == i || linked[i][j]) continue;
                linked[i][j] = true;
                edges.push_back(make_edge(nodes[i], nodes[j], edge_class::internal, d));
            }
        }
    }
    if (p_add <= 0.0) return;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || linked[i][j]) continue;
            if (gen.bernoulli(p_add)) edges.push_back(make_edge(nodes[i], nodes[j], edge_class::internal, d));
        }
    }
}

}  // namespace

reservoir_network erdos_renyi(std::size_t m, double p, std::uint64_t seed, std::size_t m_in, edge_defaults defaults)
{
    if (m < 2) throw config_error{"erdos_renyi: need at least 2 neurons"};
    if (m_in > m) throw config_error{"erdos_renyi: more inputs than neurons"};
    check_probability(p);
    rng gen{seed};
    reservoir_network net;
    net.n_neurons = m;
    net.input_neurons = first_ids(m_in);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j && gen.bernoulli(p)) net.edges.push_back(make_edge(i, j, edge_class::internal, defaults));
        }
    }
    return net;
}

reservoir_network ring_small_world(std::size_t m, std::size_t k_neighbors, double p_add, std::uint64_t seed,
                                   std::size_t input_stride, edge_defaults defaults)
{
    if (k_neighbors < 1 || m <= 2 * k_neighbors) throw config_error{"ring_small_world: need k >= 1 and m > 2k"};
    check_probability(p_add);
    rng gen{seed};
    reservoir_network net;
    net.n_neurons = m;
    net.edges.reserve(2 * k_neighbors * m);
    add_ring(net.edges, first_ids(m), k_neighbors, p_add, gen, defaults);
    if (input_stride == 0) return net;
    std::vector<neuron_id> inputs;
    for (std::size_t pos = 0; pos < m; pos += input_stride) inputs.push_back(static_cast<neuron_id>(pos));
    return designate_inputs(net, inputs);
}

reservoir_network input_ring(std::size_t m_in, std::size_t k_neighbors, double p_add, std::uint64_t seed,
                             edge_defaults defaults)
{
    if (m_in < 3) throw config_error{"input_ring: need at least 3 inputs"};
    if (k_neighbors < 1 || m_in <= 2 * k_neighbors) throw config_error{"input_ring: need k >= 1 and m_in > 2k"};
    check_probability(p_add);
    rng gen{seed};
    reservoir_network net;
    net.n_neurons = 2 * m_in;
    net.input_neurons = first_ids(m_in);
    for (std::size_t i = 0; i < m_in; ++i) net.edges.push_back(make_edge(i, m_in + i, edge_class::one_to_one, defaults));
    std::vector<neuron_id> inner(m_in);
    std::iota(inner.begin(), inner.end(), static_cast<neuron_id>(m_in));
    add_ring(net.edges, inner, k_neighbors, p_add, gen, defaults);
    return net;
}

reservoir_network handpicked_ring(std::size_t m_in, edge_defaults defaults)
{
    return input_ring(m_in, 1, 0.0, 0, defaults);
}

reservoir_network cluster_chains(std::size_t n_chains, std::size_t clusters_per_chain, std::size_t cluster_size,
                                 edge_defaults defaults)
{
    if (n_chains < 1 || clusters_per_chain < 1 || cluster_size < 1) {
        throw config_error{"cluster_chains: all counts must be >= 1"};
    }
    const std::size_t per_chain = clusters_per_chain * cluster_size;
    reservoir_network net;
    net.n_neurons = n_chains * (1 + per_chain);
    net.input_neurons = first_ids(n_chains);
    for (std::size_t c = 0; c < n_chains; ++c) {
        const std::size_t base = n_chains + c * per_chain;
        auto member = [&](std::size_t cluster, std::size_t k) { return base + cluster * cluster_size + k; };
        for (std::size_t k = 0; k < cluster_size; ++k) {
            net.edges.push_back(make_edge(c, member(0, k), edge_class::input_fanin, defaults));
        }
        for (std::size_t cl = 0; cl + 1 < clusters_per_chain; ++cl) {
            for (std::size_t a = 0; a < cluster_size; ++a) {
                for (std::size_t b = 0; b < cluster_size; ++b) {
                    net.edges.push_back(make_edge(member(cl, a), member(cl + 1, b), edge_class::internal, defaults));
                }
            }
        }
    }
    return net;
}

reservoir_network linear_chains(std::size_t m_in, std::size_t chain_len, edge_defaults defaults)
{
    if (m_in < 1 || chain_len < 1) throw config_error{"linear_chains: counts must be >= 1"};
    reservoir_network net;
    net.n_neurons = m_in * chain_len;
    net.input_neurons = first_ids(m_in);
    // Chain c: head c, then m_in + c*(len-1) + 0 .. len-2.
    for (std::size_t c = 0; c < m_in; ++c) {
        std::size_t prev = c;
        for (std::size_t k = 0; k + 1 < chain_len; ++k) {
            const std::size_t next = m_in + c * (chain_len - 1) + k;
            net.edges.push_back(make_edge(prev, next, edge_class::internal, defaults));
            prev = next;
        }
    }
    return net;
}

edge_removal remove_random_internal_edge(const reservoir_network& net, std::uint64_t seed)
{
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        if (net.edges[i].kind == edge_class::internal) candidates.push_back(i);
    }
    if (candidates.empty()) throw search_exhausted{"no internal edges left to remove"};
    rng gen{seed};
    const std::size_t idx = candidates[gen.below(candidates.size())];
    edge_removal out{net, net.edges[idx], idx};
    out.network.edges.erase(out.network.edges.begin() + static_cast<std::ptrdiff_t>(idx));
    return out;
}

std::optional<reservoir_network> remove_edge(const reservoir_network& net, const edge& e)
{
    auto it = std::ranges::find(net.edges, e);
    if (it == net.edges.end()) return std::nullopt;
    reservoir_network out = net;
    out.edges.erase(out.edges.begin() + (it - net.edges.begin()));
    return out;
}

reservoir_network designate_inputs(const reservoir_network& net, const std::vector<neuron_id>& inputs)
{
    constexpr auto unset = static_cast<neuron_id>(-1);
    std::vector<neuron_id> relabel(net.n_neurons, unset);
    neuron_id next = 0;
    for (neuron_id i : inputs) {
        if (i >= net.n_neurons) throw config_error{"designate_inputs: id out of range"};
        if (relabel[i] != unset) throw config_error{"designate_inputs: duplicate input"};
        relabel[i] = next++;
    }
    for (std::size_t i = 0; i < net.n_neurons; ++i) {
        if (relabel[i] == unset) relabel[i] = next++;
    }
    reservoir_network out;
    out.n_neurons = net.n_neurons;
    out.input_neurons = first_ids(inputs.size());
    out.edges = net.edges;
    for (edge& e : out.edges) {
        e.src = relabel[e.src];
        e.dst = relabel[e.dst];
    }
    return out;
}

nlohmann::json to_json(const reservoir_network& net)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const edge& e : net.edges) {
        edges.push_back({{"src", e.src},
                         {"dst", e.dst},
                         {"payload", e.payload},
                         {"delay", e.delay},
                         {"class", std::string{to_string(e.kind)}}});
    }
    return {{"n_neurons", net.n_neurons}, {"input_neurons", net.input_neurons}, {"edges", std::move(edges)}};
}

reservoir_network network_from_json(const nlohmann::json& j)
{
    reservoir_network net;
    try {
        for (const auto& [key, _] : j.items()) {
            if (key != "n_neurons" && key != "input_neurons" && key != "edges") {
                throw config_error{"network: unknown key '" + key + "'"};
            }
        }
        net.n_neurons = j.at("n_neurons").get<std::size_t>();
        net.input_neurons = j.at("input_neurons").get<std::vector<neuron_id>>();
        for (const auto& e : j.at("edges")) {
            net.edges.push_back({e.at("src").get<neuron_id>(), e.at("dst").get<neuron_id>(),
                                 e.at("payload").get<double>(), e.at("delay").get<double>(),
                                 edge_class_from_string(e.at("class").get<std::string>())});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw config_error{std::string{"network: "} + ex.what()};
    }
    net.validate();
    return net;
}

}  // namespace snnrc
