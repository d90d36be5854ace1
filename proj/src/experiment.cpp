#include "snnrc/experiment.hpp"

#include "snnrc/error.hpp"
#include "snnrc/rng.hpp"

#include <fstream>
#include <set>

namespace snnrc {

namespace {

using nlohmann::json;

// Reads fields from one JSON object and rejects whatever was not read.
class object_reader {
public:
    object_reader(const json& j, std::string where) : j_{j}, where_{std::move(where)}
    {
        if (!j_.is_object()) throw config_error{where_ + ": expected a JSON object"};
    }

    template <typename T>
    void get(const char* key, T& out)
    {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& ex) {
            throw config_error{where_ + "." + key + ": " + ex.what()};
        }
    }

    const json* child(const char* key)
    {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const
    {
        for (const auto& [key, _] : j_.items()) {
            if (!seen_.contains(key)) throw config_error{where_ + ": unknown key '" + key + "'"};
        }
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string, std::less<>> seen_;
};

task_kind task_from_string(const std::string& s)
{
    if (s == "henon") return task_kind::henon;
    if (s == "mackey_glass") return task_kind::mackey_glass;
    throw config_error{"task must be 'henon' or 'mackey_glass', got '" + s + "'"};
}

std::string to_string(task_kind t) { return t == task_kind::henon ? "henon" : "mackey_glass"; }

// Parameters each network family accepts besides family/payload/delay.
std::set<std::string> family_keys(const std::string& family)
{
    if (family == "erdos_renyi") return {"m", "m_in", "p"};
    if (family == "ring_small_world") return {"m", "k", "p", "input_stride"};
    if (family == "input_ring") return {"m_in", "k", "p"};
    if (family == "handpicked_ring") return {"m_in"};
    if (family == "cluster_chains") return {"n_chains", "clusters_per_chain", "cluster_size"};
    if (family == "linear_chains") return {"m_in", "chain_len"};
    if (family == "file") return {"path"};
    throw config_error{"network.family: unknown family '" + family + "'"};
}

network_spec parse_network(const json& j)
{
    network_spec n;
    object_reader r{j, "network"};
    r.get("family", n.family);
    const auto allowed = family_keys(n.family);
    for (const auto& [key, _] : j.items()) {
        if (key != "family" && key != "payload" && key != "delay" && !allowed.contains(key)) {
            throw config_error{"network: key '" + key + "' does not apply to family '" + n.family + "'"};
        }
    }
    r.get("m", n.m);
    r.get("m_in", n.m_in);
    r.get("k", n.k);
    r.get("p", n.p);
    r.get("input_stride", n.input_stride);
    r.get("n_chains", n.n_chains);
    r.get("clusters_per_chain", n.clusters_per_chain);
    r.get("cluster_size", n.cluster_size);
    r.get("chain_len", n.chain_len);
    r.get("path", n.path);
    r.get("payload", n.payload);
    r.get("delay", n.delay);
    r.finish();
    if (n.family == "file" && n.path.empty()) throw config_error{"network.path is required for family 'file'"};
    return n;
}

json network_to_json(const network_spec& n)
{
    json j{{"family", n.family}, {"payload", n.payload}, {"delay", n.delay}};
    for (const std::string& key : family_keys(n.family)) {
        if (key == "m") j[key] = n.m;
        else if (key == "m_in") j[key] = n.m_in;
        else if (key == "k") j[key] = n.k;
        else if (key == "p") j[key] = n.p;
        else if (key == "input_stride") j[key] = n.input_stride;
        else if (key == "n_chains") j[key] = n.n_chains;
        else if (key == "clusters_per_chain") j[key] = n.clusters_per_chain;
        else if (key == "cluster_size") j[key] = n.cluster_size;
        else if (key == "chain_len") j[key] = n.chain_len;
        else if (key == "path") j[key] = n.path;
    }
    return j;
}

fixed_point_lif_params parse_layer(const json& j, const std::string& where, fixed_point_lif_params p)
{
    object_reader r{j, where};
    r.get("du", p.du);
    r.get("dv", p.dv);
    r.get("vth_mant", p.vth_mant);
    r.get("bias_mant", p.bias_mant);
    r.finish();
    return p;
}

json layer_to_json(const fixed_point_lif_params& p)
{
    return {{"du", p.du}, {"dv", p.dv}, {"vth_mant", p.vth_mant}, {"bias_mant", p.bias_mant}};
}

simulation_config parse_simulation(const json& j)
{
    simulation_config s;
    object_reader r{j, "simulation"};
    std::string model = "continuous";
    r.get("model", model);
    if (model == "continuous") s.model = neuron_model::continuous;
    else if (model == "fixed_point") s.model = neuron_model::fixed_point;
    else throw config_error{"simulation.model must be 'continuous' or 'fixed_point'"};
    if (s.model == neuron_model::continuous) {
        r.get("steps_per_window", s.steps_per_window);
        r.get("delta", s.delta);
        r.get("i0", s.i0);
        if (const json* lif = r.child("lif")) {
            object_reader l{*lif, "simulation.lif"};
            l.get("tau_m", s.lif.tau_m);
            l.get("v_rest", s.lif.v_rest);
            l.get("v_reset", s.lif.v_reset);
            l.get("v_thresh", s.lif.v_thresh);
            l.get("r_membrane", s.lif.r_membrane);
            l.finish();
        }
    } else {
        s.steps_per_window = 90;
        r.get("steps_per_window", s.steps_per_window);
        if (const json* fp = r.child("fixed_point")) {
            object_reader f{*fp, "simulation.fixed_point"};
            if (const json* l = f.child("input")) s.fixed.input = parse_layer(*l, "simulation.fixed_point.input", s.fixed.input);
            if (const json* l = f.child("reservoir")) {
                s.fixed.reservoir = parse_layer(*l, "simulation.fixed_point.reservoir", s.fixed.reservoir);
            }
            if (const json* l = f.child("output")) s.fixed.output = parse_layer(*l, "simulation.fixed_point.output", s.fixed.output);
            f.get("input_payload", s.fixed.input_payload);
            f.get("output_payload", s.fixed.output_payload);
            f.finish();
        }
    }
    r.finish();
    s.validate();
    return s;
}

json simulation_to_json(const simulation_config& s)
{
    if (s.model == neuron_model::fixed_point) {
        return {{"model", "fixed_point"},
                {"steps_per_window", s.steps_per_window},
                {"fixed_point",
                 {{"input", layer_to_json(s.fixed.input)},
                  {"reservoir", layer_to_json(s.fixed.reservoir)},
                  {"output", layer_to_json(s.fixed.output)},
                  {"input_payload", s.fixed.input_payload},
                  {"output_payload", s.fixed.output_payload}}}};
    }
    return {{"model", "continuous"},
            {"delta", s.delta},
            {"steps_per_window", s.steps_per_window},
            {"i0", s.i0},
            {"lif",
             {{"tau_m", s.lif.tau_m},
              {"v_rest", s.lif.v_rest},
              {"v_reset", s.lif.v_reset},
              {"v_thresh", s.lif.v_thresh},
              {"r_membrane", s.lif.r_membrane}}}};
}

}  // namespace

std::uint64_t experiment_config::require_seed() const
{
    if (!seed) throw config_error{"a seed is required (config 'seed' or --seed)"};
    return *seed;
}

experiment_config experiment_from_json(const json& j)
{
    experiment_config c;
    object_reader r{j, "config"};
    std::string task = "henon";
    r.get("task", task);
    c.task = task_from_string(task);

    if (const json* s = r.child("series")) {
        object_reader sr{*s, "series"};
        sr.get("length", c.series.length);
        sr.get("discard", c.series.discard);
        if (const json* h = sr.child("henon")) {
            object_reader hr{*h, "series.henon"};
            hr.get("a", c.series.henon.a);
            hr.get("b", c.series.henon.b);
            hr.get("x0", c.series.henon.x0);
            hr.get("y0", c.series.henon.y0);
            hr.finish();
        }
        if (const json* m = sr.child("mackey_glass")) {
            object_reader mr{*m, "series.mackey_glass"};
            auto& mg = c.series.mackey_glass;
            mr.get("beta", mg.beta);
            mr.get("gamma", mg.gamma);
            mr.get("eta", mg.eta);
            mr.get("tau_delay", mg.tau_delay);
            mr.get("euler_dt", mg.euler_dt);
            mr.get("sample_interval", mg.sample_interval);
            mr.get("history_init", mg.history_init);
            mr.finish();
        }
        sr.finish();
    }
    if (const json* n = r.child("network")) c.network = parse_network(*n);
    if (const json* s = r.child("simulation")) c.simulation = parse_simulation(*s);
    if (const json* s = r.child("split")) {
        object_reader sr{*s, "split"};
        sr.get("train_fraction", c.split.train_fraction);
        sr.get("washout", c.split.washout);
        sr.finish();
    }
    std::string norm = "std";
    r.get("nrmse_norm", norm);
    c.normalization = nrmse_norm_from_string(norm);
    if (j.contains("seed")) {
        std::uint64_t seed = 0;
        r.get("seed", seed);
        c.seed = seed;
    }
    r.get("output_dir", c.output_dir);
    if (const json* a = r.child("anneal")) {
        object_reader ar{*a, "anneal"};
        ar.get("n_steps", c.anneal.n_steps);
        ar.get("temperature_scale", c.anneal.temperature_scale);
        ar.get("checkpoint_every", c.anneal.checkpoint_every);
        ar.finish();
    }
    if (const json* s = r.child("sweep")) {
        object_reader sr{*s, "sweep"};
        sr.get("n_seeds", c.sweep_seeds);
        sr.finish();
    }
    r.finish();
    if (c.series.length < 1) throw config_error{"series.length must be >= 1"};
    return c;
}

experiment_config load_experiment(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in) throw config_error{"cannot open config file " + path.string()};
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw config_error{"config " + path.string() + ": " + ex.what()};
    }
    experiment_config c = experiment_from_json(j);
    // Network files are resolved relative to the config's directory.
    if (c.network.family == "file" && std::filesystem::path{c.network.path}.is_relative()) {
        c.network.path = (path.parent_path() / c.network.path).lexically_normal().string();
    }
    return c;
}

json to_json(const experiment_config& c)
{
    const auto& h = c.series.henon;
    const auto& mg = c.series.mackey_glass;
    json j{{"task", to_string(c.task)},
           {"series",
            {{"length", c.series.length},
             {"discard", c.series.discard},
             {"henon", {{"a", h.a}, {"b", h.b}, {"x0", h.x0}, {"y0", h.y0}}},
             {"mackey_glass",
              {{"beta", mg.beta},
               {"gamma", mg.gamma},
               {"eta", mg.eta},
               {"tau_delay", mg.tau_delay},
               {"euler_dt", mg.euler_dt},
               {"sample_interval", mg.sample_interval},
               {"history_init", mg.history_init}}}}},
           {"network", network_to_json(c.network)},
           {"simulation", simulation_to_json(c.simulation)},
           {"split", {{"train_fraction", c.split.train_fraction}, {"washout", c.split.washout}}},
           {"nrmse_norm", std::string{to_string(c.normalization)}},
           {"anneal",
            {{"n_steps", c.anneal.n_steps},
             {"temperature_scale", c.anneal.temperature_scale},
             {"checkpoint_every", c.anneal.checkpoint_every}}},
           {"sweep", {{"n_seeds", c.sweep_seeds}}}};
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

time_series make_series(const experiment_config& c)
{
    const std::size_t total = c.series.length + c.series.discard;
    time_series full = c.task == task_kind::henon ? gen_henon(c.series.henon, total)
                                                  : gen_mackey_glass(c.series.mackey_glass, total);
    if (c.series.discard == 0) return full;
    time_series out;
    out.values.assign(full.values.begin() + static_cast<std::ptrdiff_t>(c.series.discard), full.values.end());
    out.origin = full.origin + ",discard=" + std::to_string(c.series.discard);
    return out;
}

reservoir_network make_network(const experiment_config& c, std::uint64_t seed)
{
    const network_spec& n = c.network;
    const edge_defaults d{n.payload, n.delay};
    const std::uint64_t graph_seed = derive_seed(seed, 1);
    if (n.family == "erdos_renyi") return erdos_renyi(n.m, n.p, graph_seed, n.m_in, d);
    if (n.family == "ring_small_world") return ring_small_world(n.m, n.k, n.p, graph_seed, n.input_stride, d);
    if (n.family == "input_ring") return input_ring(n.m_in, n.k, n.p, graph_seed, d);
    if (n.family == "handpicked_ring") return handpicked_ring(n.m_in, d);
    if (n.family == "cluster_chains") return cluster_chains(n.n_chains, n.clusters_per_chain, n.cluster_size, d);
    if (n.family == "linear_chains") return linear_chains(n.m_in, n.chain_len, d);
    if (n.family == "file") {
        std::ifstream in{n.path};
        if (!in) throw config_error{"cannot open network file " + n.path};
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            throw config_error{"network file " + n.path + ": " + ex.what()};
        }
        return network_from_json(j);
    }
    throw config_error{"unknown network family '" + n.family + "'"};
}

task_pipeline make_pipeline(const experiment_config& c, time_series series)
{
    task_pipeline p;
    p.series = std::move(series);
    p.train_fraction = c.split.train_fraction;
    p.washout = c.split.washout;
    p.simulation = c.simulation;
    p.normalization = c.normalization;
    return p;
}

}  // namespace snnrc
