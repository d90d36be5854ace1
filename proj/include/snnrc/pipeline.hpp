#pragma once

// One-step-ahead prediction task on a frozen series: encode, simulate,
// regress on the training windows, score on the held-out windows.
//
// The state column of window n is paired with target u_{n+1}. Pairs whose
// target lies in the training part (after the washout) train the readout;
// pairs whose target lies in the test part are scored.

#include "snnrc/readout.hpp"
#include "snnrc/reservoir.hpp"
#include "snnrc/timeseries.hpp"
#include "snnrc/topology.hpp"

#include <vector>

namespace snnrc {

struct task_pipeline {
    time_series series;
    double train_fraction = 0.8;
    std::size_t washout = 20;
    simulation_config simulation;
    nrmse_norm normalization = nrmse_norm::std_dev;
};

struct task_result {
    score std_score;
    score range_score;
    /// Test-part targets and predictions, aligned.
    std::vector<double> targets;
    std::vector<double> predictions;
    /// Series index of targets[0].
    std::size_t first_target_index = 0;
    std::size_t n_train_pairs = 0;
    readout_model<double> model;
    state_matrix states;
    encoding_config encoding;

    const score& selected(nrmse_norm n) const { return n == nrmse_norm::range ? range_score : std_score; }
};

task_result run_task(const reservoir_network& net, const task_pipeline& pipeline, membrane_trace* trace = nullptr);

/// NRMSE on the held-out part under the pipeline's normalization.
double evaluate_network(const reservoir_network& net, const task_pipeline& pipeline);

}  // namespace snnrc
