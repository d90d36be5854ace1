#include "snnrc/commands.hpp"

#include "snnrc/error.hpp"
#include "snnrc/rng.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <thread>

namespace snnrc {

namespace {

using nlohmann::json;

void require_dir(const fs::path& out)
{
    if (out.empty()) throw config_error{"no output directory given (--out)"};
    if (!fs::is_directory(out)) throw config_error{"output directory does not exist: " + out.string()};
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream os{path, std::ios::binary | std::ios::trunc};
    if (!os) throw pipeline_error{"cannot write " + path.string()};
    return os;
}

void write_json(const fs::path& path, const json& j)
{
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

// Runs one pipeline stage, tagging non-config failures with the stage name.
template <typename Fn>
auto stage(const char* name, Fn&& fn)
{
    try {
        return fn();
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& ex) {
        throw pipeline_error{std::string{"stage "} + name + ": " + ex.what()};
    }
}

json network_summary(const reservoir_network& net)
{
    return {{"n_neurons", net.n_neurons},
            {"n_inputs", net.input_neurons.size()},
            {"edges", net.edges.size()},
            {"internal_edges", net.count(edge_class::internal)}};
}

}  // namespace

void cmd_gen_series(const experiment_config& config, const fs::path& out)
{
    require_dir(out);
    const time_series series = stage("gen-series", [&] { return make_series(config); });
    write_json(out / "config.json", to_json(config));
    auto os = open_out(out / "series.csv");
    write_series_csv(os, series);
}

void cmd_build_net(const experiment_config& config, const fs::path& out)
{
    require_dir(out);
    const reservoir_network net = make_network(config, config.require_seed());
    write_json(out / "config.json", to_json(config));
    write_json(out / "network.json", to_json(net));
}

task_result cmd_run(const experiment_config& config, const fs::path& out, const run_options& options)
{
    require_dir(out);
    const std::uint64_t seed = config.require_seed();
    const reservoir_network net = stage("build-net", [&] { return make_network(config, seed); });
    const task_pipeline pipeline = make_pipeline(config, stage("gen-series", [&] { return make_series(config); }));
    membrane_trace trace;
    const task_result result = stage("simulate", [&] {
        return run_task(net, pipeline, options.dump_traces ? &trace : nullptr);
    });

    write_json(out / "config.json", to_json(config));
    write_json(out / "network.json", to_json(net));
    {
        auto os = open_out(out / "predictions.csv");
        os << "index,target,prediction\n" << std::setprecision(17);
        for (std::size_t i = 0; i < result.targets.size(); ++i) {
            os << result.first_target_index + i << ',' << result.targets[i] << ',' << result.predictions[i] << '\n';
        }
    }
    {
        auto os = open_out(out / "attractor.csv");
        os << "index,target,target_next,prediction,prediction_next\n" << std::setprecision(17);
        for (std::size_t i = 0; i + 1 < result.targets.size(); ++i) {
            os << result.first_target_index + i << ',' << result.targets[i] << ',' << result.targets[i + 1] << ','
               << result.predictions[i] << ',' << result.predictions[i + 1] << '\n';
        }
    }
    write_json(out / "score.json",
               {{"nrmse", result.selected(config.normalization).nrmse},
                {"normalization", std::string{to_string(config.normalization)}},
                {"nrmse_std", result.std_score.nrmse},
                {"nrmse_range", result.range_score.nrmse},
                {"rmse", result.std_score.rmse},
                {"n_train_pairs", result.n_train_pairs},
                {"n_test", result.targets.size()},
                {"network", network_summary(net)}});
    const spike_summary stats = spike_stats(result.states);
    write_json(out / "spike_stats.json",
               {{"total_spikes", stats.total},
                {"silent_neurons", stats.silent},
                {"rows", result.states.rows() - 1},
                {"windows", result.states.cols()},
                {"per_neuron_mean", std::vector<double>(stats.per_neuron_mean.data(),
                                                        stats.per_neuron_mean.data() + stats.per_neuron_mean.size())}});
    json w_out = json::array();
    for (Eigen::Index r = 0; r < result.model.w_out.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(result.model.w_out.cols()));
        for (Eigen::Index c = 0; c < result.model.w_out.cols(); ++c) row[static_cast<std::size_t>(c)] = result.model.w_out(r, c);
        w_out.push_back(std::move(row));
    }
    const auto& ts = result.model.stats;
    write_json(out / "model.json",
               {{"w_out", std::move(w_out)},
                {"target_stats", {{"mean", ts.mean}, {"std", ts.std_dev}, {"min", ts.min}, {"max", ts.max}}},
                {"encoding",
                 {{"m_in", result.encoding.m_in},
                  {"series_min", result.encoding.series_min},
                  {"series_max", result.encoding.series_max}}}});
    if (options.dump_traces) {
        auto counts = open_out(out / "counts.csv");
        write_counts_csv(counts, result.states);
        auto membrane = open_out(out / "membrane.csv");
        write_membrane_csv(membrane, trace);
    }
    return result;
}

anneal_state cmd_metalearn(const experiment_config& config, const fs::path& out, const metalearn_options& options)
{
    require_dir(out);
    const std::uint64_t seed = config.require_seed();
    const json effective = to_json(config);
    const task_pipeline pipeline = make_pipeline(config, stage("gen-series", [&] { return make_series(config); }));
    const anneal_config ac{config.anneal.n_steps, config.anneal.temperature_scale, derive_seed(seed, 2)};
    ac.validate();
    const network_objective objective = [&](const reservoir_network& net) { return evaluate_network(net, pipeline); };
    const fs::path checkpoint = out / "checkpoint.json";

    anneal_state state;
    if (options.resume) {
        std::ifstream in{checkpoint};
        if (!in) throw config_error{"no checkpoint to resume from at " + checkpoint.string()};
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            throw config_error{std::string{"checkpoint: "} + ex.what()};
        }
        if (j.value("config", json{}) != effective) throw config_error{"checkpoint was written for a different config"};
        state = anneal_state_from_json(j.at("state"));
    } else {
        const reservoir_network initial = stage("build-net", [&] { return make_network(config, seed); });
        write_json(out / "config.json", effective);
        write_json(out / "initial_network.json", to_json(initial));
        state = stage("evaluate", [&] { return anneal_start(initial, objective); });
    }

    auto save = [&](const anneal_state& s) {
        write_json(checkpoint, {{"config", effective}, {"state", to_json(s)}});
        auto os = open_out(out / "trace.csv");
        write_trace_csv(os, s.trace);
    };
    const std::size_t every = std::max<std::size_t>(1, config.anneal.checkpoint_every);
    anneal_continue(state, ac, objective, [&](const anneal_state& s) {
        if (options.stop_after && s.iteration >= *options.stop_after) return false;
        if (s.iteration % every == 0) save(s);
        return true;
    });
    save(state);
    const bool finished = state.exhausted || state.iteration >= ac.n_steps;
    if (!finished) return state;

    write_json(out / "best_network.json", to_json(state.best));
    write_json(out / "final_network.json", to_json(state.current));
    std::size_t accepted = 0;
    for (const anneal_record& r : state.trace) accepted += r.accepted ? 1 : 0;
    write_json(out / "score.json",
               {{"initial_nrmse", state.initial_nrmse},
                {"final_nrmse", state.current_nrmse},
                {"best_nrmse", state.best_nrmse},
                {"normalization", std::string{to_string(config.normalization)}},
                {"iterations", state.iteration},
                {"accepted", accepted},
                {"exhausted", state.exhausted},
                {"initial_internal_edges", state.trace.empty() ? state.current.count(edge_class::internal)
                                                               : state.trace.front().edge_count
                                                                   + (state.trace.front().accepted ? 1 : 0)},
                {"final_internal_edges", state.current.count(edge_class::internal)}});
    return state;
}

sweep_result cmd_sweep(const experiment_config& config, const fs::path& out, std::size_t n_seeds)
{
    if (n_seeds < 1) throw config_error{"sweep: n_seeds must be >= 1"};
    require_dir(out);
    const std::uint64_t base = config.require_seed();
    const task_pipeline pipeline = make_pipeline(config, stage("gen-series", [&] { return make_series(config); }));

    auto one = [&](std::uint64_t seed) {
        sweep_row row;
        row.seed = seed;
        try {
            const task_result r = run_task(make_network(config, seed), pipeline);
            row.nrmse_std = r.std_score.nrmse;
            row.nrmse_range = r.range_score.nrmse;
        } catch (const std::exception& ex) {
            row.status = ex.what();
            row.nrmse_std = row.nrmse_range = std::nan("");
        }
        return row;
    };

    sweep_result result;
    result.rows.resize(n_seeds);
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < n_seeds; start += workers) {
        std::vector<std::future<sweep_row>> batch;
        for (std::size_t i = start; i < std::min(n_seeds, start + workers); ++i) {
            batch.push_back(std::async(std::launch::async, one, base + i));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) result.rows[start + i] = batch[i].get();
    }

    const bool use_range = config.normalization == nrmse_norm::range;
    std::vector<double> ok;
    for (const sweep_row& r : result.rows) {
        if (r.status == "ok") ok.push_back(use_range ? r.nrmse_range : r.nrmse_std);
    }
    if (!ok.empty()) {
        const auto stats = describe<double>(ok);
        result.mean = stats.mean;
        result.std_dev = stats.std_dev;
    } else {
        result.mean = result.std_dev = std::nan("");
    }

    write_json(out / "config.json", to_json(config));
    auto os = open_out(out / "sweep.csv");
    os << "seed,nrmse_std,nrmse_range,status\n" << std::setprecision(17);
    for (const sweep_row& r : result.rows) {
        std::string status = r.status;
        std::ranges::replace(status, ',', ';');
        std::ranges::replace(status, '\n', ' ');
        os << r.seed << ',' << r.nrmse_std << ',' << r.nrmse_range << ',' << status << '\n';
    }
    os << "mean," << (use_range ? "," : "") << result.mean << (use_range ? "" : ",") << ",summary\n";
    os << "std," << (use_range ? "," : "") << result.std_dev << (use_range ? "" : ",") << ",summary\n";
    return result;
}

}  // namespace snnrc
