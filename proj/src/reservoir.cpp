#include "snnrc/reservoir.hpp"

#include "snnrc/error.hpp"
#include "snnrc/spike_queue.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace snnrc {

void simulation_config::validate() const
{
    if (steps_per_window < 1) throw config_error{"simulation: steps_per_window must be >= 1"};
    if (model == neuron_model::continuous) {
        lif.validate();
        if (!(delta > 0.0)) throw config_error{"simulation: delta must be positive"};
        if (!(i0 >= 0.0)) throw config_error{"simulation: i0 must be non-negative"};
    } else {
        fixed.input.validate();
        fixed.reservoir.validate();
        fixed.output.validate();
    }
}

namespace {

void check_schedule(const reservoir_network& net, const input_schedule& schedule)
{
    for (std::size_t n = 0; n < schedule.size(); ++n) {
        if (schedule[n] < 1 || schedule[n] > net.input_neurons.size()) {
            throw config_error{"input schedule index " + std::to_string(schedule[n]) + " at window "
                               + std::to_string(n) + " exceeds the " + std::to_string(net.input_neurons.size())
                               + " input neurons"};
        }
    }
}

struct delayed_fanout {
    std::int64_t delay_steps = 0;
    std::vector<synapse> targets;
};

// Outgoing synapses grouped by integer delay, per source neuron.
std::vector<std::vector<delayed_fanout>> build_fanout(const reservoir_network& net, double dt)
{
    std::vector<std::vector<delayed_fanout>> out(net.n_neurons);
    for (const edge& e : net.edges) {
        const auto steps = static_cast<std::int64_t>(std::llround(e.delay / dt));
        auto& groups = out[e.src];
        auto it = std::ranges::find(groups, steps, &delayed_fanout::delay_steps);
        if (it == groups.end()) {
            groups.push_back({steps, {}});
            it = std::prev(groups.end());
        }
        it->targets.push_back({e.dst, e.payload});
    }
    return out;
}

}  // namespace

state_matrix simulate(const reservoir_network& net, const input_schedule& schedule, const simulation_config& config,
                      membrane_trace* trace)
{
    config.validate();
    net.validate();
    check_schedule(net, schedule);
    const std::size_t m = net.n_neurons;
    const std::size_t t_windows = schedule.size();
    const double dt = config.dt();
    const auto fanout = build_fanout(net, dt);

    state_matrix states = state_matrix::Zero(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(t_windows));
    states.row(0).setOnes();

    std::vector<continuous_state> neurons(m, continuous_state{config.lif.v_rest});
    std::vector<double> impulse(m, 0.0);
    std::vector<double> external(m, 0.0);
    spike_queue queue;
    std::int64_t step = 0;

    for (std::size_t n = 0; n < t_windows; ++n) {
        const neuron_id driven = net.input_neurons[schedule[n] - 1];
        external[driven] = config.i0;
        const auto col = static_cast<Eigen::Index>(n);
        for (std::size_t k = 0; k < config.steps_per_window; ++k, ++step) {
            queue.drain_until(step, [&](const spike_event& ev) { impulse[ev.target] += ev.payload; });
            for (std::size_t i = 0; i < m; ++i) {
                const double i_total = external[i] + impulse[i] / dt;
                impulse[i] = 0.0;
                if (step_continuous(neurons[i], config.lif, i_total, dt)) {
                    states(static_cast<Eigen::Index>(i + 1), col) += 1.0;
                    for (const delayed_fanout& group : fanout[i]) {
                        schedule_spike(queue, group.targets, step, group.delay_steps);
                    }
                }
            }
            if (trace != nullptr) {
                const double t = static_cast<double>(step + 1) * dt;
                if (t < trace->until) {
                    for (std::size_t i = 0; i < m; ++i) {
                        trace->samples.push_back({t, static_cast<neuron_id>(i), neurons[i].v});
                    }
                }
            }
        }
        external[driven] = 0.0;
    }
    return states;
}

namespace {

std::int64_t integer_payload(double payload)
{
    const double r = std::round(payload);
    if (std::abs(payload - r) > 1e-9) {
        throw config_error{"fixed-point model requires integer edge payloads"};
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

fixed_point_run simulate_fixed_point(const reservoir_network& net, const input_schedule& schedule,
                                     const simulation_config& config, membrane_trace* trace)
{
    config.validate();
    net.validate();
    check_schedule(net, schedule);
    const fixed_point_layers& layers = config.fixed;
    const std::size_t n_in = net.input_neurons.size();
    const std::size_t m = net.n_neurons;
    const std::size_t n_out = n_in + m;
    const std::size_t t_windows = schedule.size();
    const auto rows = static_cast<Eigen::Index>(1 + n_out);
    const auto cols = static_cast<Eigen::Index>(t_windows);

    struct weighted {
        neuron_id target;
        std::int64_t weight;
    };
    std::vector<std::vector<weighted>> fanout(m);
    for (const edge& e : net.edges) fanout[e.src].push_back({e.dst, integer_payload(e.payload) * fixed_point_unit});
    const std::int64_t input_weight = std::int64_t{layers.input_payload} * fixed_point_unit;
    const std::int64_t output_weight = std::int64_t{layers.output_payload} * fixed_point_unit;
    if (output_weight <= 0) throw config_error{"fixed-point output payload must be positive"};

    fixed_point_run run{state_matrix::Zero(rows, cols), state_matrix::Zero(rows, cols)};
    run.integrated.row(0).setOnes();
    run.direct.row(0).setOnes();

    std::vector<fixed_point_state> input_layer(n_in), reservoir(m), output(n_out);
    std::vector<std::int64_t> a_in(m, 0), a_next(m, 0);
    std::vector<bool> spiked(n_out, false);

    fixed_point_lif_params input_idle = layers.input;
    input_idle.bias_mant = 0;
    fixed_point_lif_params input_driven = layers.input;
    double now = 0.0;

    for (std::size_t n = 0; n < t_windows; ++n) {
        const std::size_t driven = schedule[n] - 1;
        const auto col = static_cast<Eigen::Index>(n);
        for (std::size_t k = 0; k < config.steps_per_window; ++k) {
            std::ranges::fill(a_next, 0);
            for (std::size_t i = 0; i < n_in; ++i) {
                const bool s = step_fixed_point(input_layer[i], i == driven ? input_driven : input_idle, 0);
                spiked[i] = s;
                if (s) a_next[net.input_neurons[i]] += input_weight;
            }
            for (std::size_t j = 0; j < m; ++j) {
                const bool s = step_fixed_point(reservoir[j], layers.reservoir, a_in[j]);
                spiked[n_in + j] = s;
                if (s) {
                    for (const weighted& w : fanout[j]) a_next[w.target] += w.weight;
                }
            }
            for (std::size_t o = 0; o < n_out; ++o) {
                if (spiked[o]) run.direct(static_cast<Eigen::Index>(o + 1), col) += 1.0;
                if (step_fixed_point(output[o], layers.output, spiked[o] ? output_weight : 0)) {
                    throw pipeline_error{"fixed-point output integrator " + std::to_string(o)
                                         + " crossed its threshold in window " + std::to_string(n)};
                }
            }
            std::swap(a_in, a_next);
            now += 1.0;
            if (trace != nullptr && now < trace->until) {
                for (std::size_t j = 0; j < m; ++j) {
                    trace->samples.push_back({now, static_cast<neuron_id>(j), static_cast<double>(reservoir[j].v)});
                }
            }
        }
        for (std::size_t o = 0; o < n_out; ++o) {
            run.integrated(static_cast<Eigen::Index>(o + 1), col) = static_cast<double>(output[o].v / output_weight);
            output[o] = {};
        }
    }
    return run;
}

state_matrix fixed_point_readout_counts(const reservoir_network& net, const input_schedule& schedule,
                                        const simulation_config& config)
{
    if (config.model != neuron_model::fixed_point) {
        throw config_error{"fixed_point_readout_counts requires the fixed-point neuron model"};
    }
    return simulate_fixed_point(net, schedule, config).integrated;
}

state_matrix run_reservoir(const reservoir_network& net, const input_schedule& schedule,
                           const simulation_config& config, membrane_trace* trace)
{
    if (config.model == neuron_model::fixed_point) return simulate_fixed_point(net, schedule, config, trace).integrated;
    return simulate(net, schedule, config, trace);
}

spike_summary spike_stats(const state_matrix& states)
{
    spike_summary out;
    if (states.rows() <= 1) return out;
    const auto counts = states.bottomRows(states.rows() - 1);
    out.total = counts.sum();
    out.per_neuron_mean = states.cols() > 0 ? Eigen::VectorXd{counts.rowwise().mean()}
                                            : Eigen::VectorXd::Zero(counts.rows());
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        if (states.cols() == 0 || counts.row(i).maxCoeff() == 0.0) ++out.silent;
    }
    return out;
}

void write_counts_csv(std::ostream& os, const state_matrix& states)
{
    os << "window,neuron,count\n";
    for (Eigen::Index n = 0; n < states.cols(); ++n) {
        for (Eigen::Index i = 1; i < states.rows(); ++i) {
            if (states(i, n) != 0.0) os << n << ',' << (i - 1) << ',' << static_cast<long long>(states(i, n)) << '\n';
        }
    }
}

void write_membrane_csv(std::ostream& os, const membrane_trace& trace)
{
    os << "time,neuron,v\n" << std::setprecision(17);
    for (const membrane_sample& s : trace.samples) os << s.time << ',' << s.neuron << ',' << s.v << '\n';
}

}  // namespace snnrc
