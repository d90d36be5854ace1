#include "snnrc/anneal.hpp"

#include "snnrc/error.hpp"
#include "snnrc/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace snnrc {

void anneal_config::validate() const
{
    if (n_steps < 1) throw config_error{"anneal: n_steps must be >= 1"};
    if (!(temperature_scale > 0.0)) throw config_error{"anneal: temperature_scale must be positive"};
}

double temperature(std::size_t iteration, double scale)
{
    return 1.0 / (scale * static_cast<double>(iteration));
}

double acceptance_probability(double delta_f, double temperature)
{
    if (!(delta_f > 0.0)) return 1.0;
    if (!(temperature > 0.0)) return 0.0;
    return std::min(1.0, std::exp(-delta_f / temperature));
}

anneal_state anneal_start(const reservoir_network& initial, const network_objective& objective)
{
    anneal_state state;
    state.current = initial;
    state.best = initial;
    state.current_nrmse = objective(initial);
    if (!std::isfinite(state.current_nrmse)) throw pipeline_error{"anneal: initial network could not be scored"};
    state.best_nrmse = state.current_nrmse;
    state.initial_nrmse = state.current_nrmse;
    return state;
}

void anneal_continue(anneal_state& state, const anneal_config& config, const network_objective& objective,
                     const anneal_observer& observer)
{
    config.validate();
    while (state.iteration < config.n_steps && !state.exhausted) {
        const std::size_t n = state.iteration + 1;
        edge_removal proposal;
        try {
            proposal = remove_random_internal_edge(state.current, derive_seed(config.rng_seed, 2 * n));
        } catch (const search_exhausted&) {
            state.exhausted = true;
            break;
        }
        anneal_record rec;
        rec.iteration = n;
        rec.removed = proposal.removed;
        try {
            rec.candidate_nrmse = objective(proposal.network);
            if (!std::isfinite(rec.candidate_nrmse)) throw pipeline_error{"non-finite score"};
        } catch (const std::exception& ex) {
            rec.candidate_nrmse = std::numeric_limits<double>::quiet_NaN();
            rec.note = ex.what();
        }
        if (rec.note.empty()) {
            const double delta_f = rec.candidate_nrmse - state.current_nrmse;
            const double r = rng{derive_seed(config.rng_seed, 2 * n + 1)}.uniform_closed();
            rec.accepted = r <= acceptance_probability(delta_f, temperature(n, config.temperature_scale));
        }
        if (rec.accepted) {
            state.current = std::move(proposal.network);
            state.current_nrmse = rec.candidate_nrmse;
            if (state.current_nrmse < state.best_nrmse) {
                state.best = state.current;
                state.best_nrmse = state.current_nrmse;
            }
        }
        rec.edge_count = state.current.count(edge_class::internal);
        state.trace.push_back(std::move(rec));
        state.iteration = n;
        if (observer && !observer(state)) return;
    }
}

anneal_state anneal(const reservoir_network& initial, const anneal_config& config, const network_objective& objective)
{
    config.validate();
    anneal_state state = anneal_start(initial, objective);
    anneal_continue(state, config, objective);
    return state;
}

reservoir_network replay(const reservoir_network& initial, const std::vector<anneal_record>& trace)
{
    reservoir_network net = initial;
    for (const anneal_record& rec : trace) {
        if (!rec.accepted) continue;
        auto next = remove_edge(net, rec.removed);
        if (!next) throw pipeline_error{"replay: accepted edge missing at iteration " + std::to_string(rec.iteration)};
        net = std::move(*next);
    }
    return net;
}

void write_trace_csv(std::ostream& os, const std::vector<anneal_record>& trace)
{
    os << "iteration,candidate_nrmse,accepted,edge_count\n" << std::setprecision(17);
    for (const anneal_record& r : trace) {
        os << r.iteration << ',';
        if (std::isnan(r.candidate_nrmse)) os << "nan";
        else os << r.candidate_nrmse;
        os << ',' << (r.accepted ? 1 : 0) << ',' << r.edge_count << '\n';
    }
}

namespace {

nlohmann::json edge_json(const edge& e)
{
    return {{"src", e.src}, {"dst", e.dst}, {"payload", e.payload}, {"delay", e.delay},
            {"class", std::string{to_string(e.kind)}}};
}

edge edge_from(const nlohmann::json& j)
{
    return {j.at("src").get<neuron_id>(), j.at("dst").get<neuron_id>(), j.at("payload").get<double>(),
            j.at("delay").get<double>(), edge_class_from_string(j.at("class").get<std::string>())};
}

// JSON has no NaN; failed evaluations are stored as null.
nlohmann::json number_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const anneal_state& state)
{
    nlohmann::json trace = nlohmann::json::array();
    for (const anneal_record& r : state.trace) {
        trace.push_back({{"iteration", r.iteration},
                         {"candidate_nrmse", number_or_null(r.candidate_nrmse)},
                         {"accepted", r.accepted},
                         {"edge_count", r.edge_count},
                         {"removed", edge_json(r.removed)},
                         {"note", r.note}});
    }
    return {{"iteration", state.iteration},
            {"current", to_json(state.current)},
            {"current_nrmse", state.current_nrmse},
            {"best", to_json(state.best)},
            {"best_nrmse", state.best_nrmse},
            {"initial_nrmse", state.initial_nrmse},
            {"exhausted", state.exhausted},
            {"trace", std::move(trace)}};
}

anneal_state anneal_state_from_json(const nlohmann::json& j)
{
    anneal_state s;
    try {
        s.iteration = j.at("iteration").get<std::size_t>();
        s.current = network_from_json(j.at("current"));
        s.current_nrmse = j.at("current_nrmse").get<double>();
        s.best = network_from_json(j.at("best"));
        s.best_nrmse = j.at("best_nrmse").get<double>();
        s.initial_nrmse = j.at("initial_nrmse").get<double>();
        s.exhausted = j.at("exhausted").get<bool>();
        for (const auto& r : j.at("trace")) {
            anneal_record rec;
            rec.iteration = r.at("iteration").get<std::size_t>();
            rec.candidate_nrmse = r.at("candidate_nrmse").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                                    : r.at("candidate_nrmse").get<double>();
            rec.accepted = r.at("accepted").get<bool>();
            rec.edge_count = r.at("edge_count").get<std::size_t>();
            rec.removed = edge_from(r.at("removed"));
            rec.note = r.at("note").get<std::string>();
            s.trace.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw config_error{std::string{"checkpoint: "} + ex.what()};
    }
    return s;
}

}  // namespace snnrc
