#pragma once

// Spiking reservoir simulation producing per-window spike-count states.
//
// Column n of a state matrix describes input window n: row 0 is a constant
// bias of 1, the remaining rows hold spike counts.

#include "snnrc/encoding.hpp"
#include "snnrc/lif.hpp"
#include "snnrc/topology.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace snnrc {

using state_matrix = Eigen::MatrixXd;

enum class neuron_model { continuous, fixed_point };

/// Per-layer integer parameters of the fixed-point reservoir. The input
/// layer is driven through its bias: only the neuron selected by the
/// schedule receives `input.bias_mant` during a window. Output layers are
/// integrators whose membrane is read out and cleared at each window end.
struct fixed_point_layers {
    fixed_point_lif_params input{4095, 0, 1, 4};
    fixed_point_lif_params reservoir{80, 40, 82, 0};
    fixed_point_lif_params output{4095, 0, 1000, 0};
    /// Weight of the input-layer to chain-head links.
    std::int32_t input_payload = 8;
    /// Weight of the one-to-one links into the output integrators.
    std::int32_t output_payload = 8;
};

struct simulation_config {
    neuron_model model = neuron_model::continuous;
    continuous_lif_params lif;
    /// Presentation window length, in model time units.
    double delta = 1.0;
    std::size_t steps_per_window = 200;
    /// Injection current for the active input (continuous model).
    double i0 = 100.0;
    fixed_point_layers fixed;

    double dt() const { return delta / static_cast<double>(steps_per_window); }
    void validate() const;
};

struct membrane_sample {
    double time = 0.0;
    neuron_id neuron = 0;
    double v = 0.0;
};

/// Collects membrane potentials for every step with time < until.
struct membrane_trace {
    double until = 3.0;
    std::vector<membrane_sample> samples;
};

/// Continuous-model run. Input k of the schedule (1-based) injects i0 into
/// net.input_neurons[k-1] for the whole window. Delayed spikes cross window
/// boundaries and no state is reset between windows. A delivered spike
/// carries its payload as a Dirac impulse, raising V by payload / tau_m.
state_matrix simulate(const reservoir_network& net, const input_schedule& schedule, const simulation_config& config,
                      membrane_trace* trace = nullptr);

struct fixed_point_run {
    /// (1 + M_in + M) x T counts recovered from the output integrators.
    state_matrix integrated;
    /// Same layout, counted directly from emitted spikes.
    state_matrix direct;
};

/// Fixed-point run of input layer -> reservoir -> output integrators. Spikes
/// between the input layer and the reservoir, and inside the reservoir, arrive
/// one timestep after emission; output integrators see the spikes of the
/// current step. Edge delays are not used by this model.
fixed_point_run simulate_fixed_point(const reservoir_network& net, const input_schedule& schedule,
                                     const simulation_config& config, membrane_trace* trace = nullptr);

/// The integrated matrix of simulate_fixed_point.
state_matrix fixed_point_readout_counts(const reservoir_network& net, const input_schedule& schedule,
                                        const simulation_config& config);

/// Dispatches on config.model.
state_matrix run_reservoir(const reservoir_network& net, const input_schedule& schedule,
                           const simulation_config& config, membrane_trace* trace = nullptr);

struct spike_summary {
    double total = 0.0;
    /// Mean count per window for each neuron row (bias excluded).
    Eigen::VectorXd per_neuron_mean;
    std::size_t silent = 0;
};

spike_summary spike_stats(const state_matrix& states);

/// `window,neuron,count` rows for every non-zero count.
void write_counts_csv(std::ostream& os, const state_matrix& states);
/// `time,neuron,v` rows.
void write_membrane_csv(std::ostream& os, const membrane_trace& trace);

}  // namespace snnrc
