#include "snnrc/pipeline.hpp"

#include "snnrc/encoding.hpp"
#include "snnrc/error.hpp"

namespace snnrc {

task_result run_task(const reservoir_network& net, const task_pipeline& pipeline, membrane_trace* trace)
{
    const series_split split = split_series(pipeline.series, pipeline.train_fraction, pipeline.washout);
    const std::size_t n_total = pipeline.series.size();
    const std::size_t n_train = split.train.size();
    if (n_train < pipeline.washout + 2) throw config_error{"task: training part too short for the washout"};
    if (split.test.size() < 2) throw config_error{"task: test part needs at least two values"};

    task_result out;
    encoding_config enc;
    enc.m_in = net.input_neurons.size();
    out.encoding = fit_range(enc, split.train);
    const input_schedule schedule = build_schedule(pipeline.series, out.encoding);
    out.states = run_reservoir(net, schedule, pipeline.simulation, trace);

    // Pair n -> target n + 1.
    const auto train_begin = static_cast<Eigen::Index>(pipeline.washout);
    const auto train_end = static_cast<Eigen::Index>(n_train - 1);
    const auto test_end = static_cast<Eigen::Index>(n_total - 1);
    const Eigen::Map<const Eigen::RowVectorXd> values(pipeline.series.values.data(),
                                                      static_cast<Eigen::Index>(n_total));

    const Eigen::MatrixXd x_train = out.states.middleCols(train_begin, train_end - train_begin);
    const Eigen::MatrixXd y_train = values.segment(train_begin + 1, train_end - train_begin);
    out.model = train(x_train, y_train);
    out.n_train_pairs = static_cast<std::size_t>(train_end - train_begin);

    const Eigen::MatrixXd pred = predict(out.model, out.states.middleCols(train_end, test_end - train_end));
    out.first_target_index = n_train;
    out.targets.assign(pipeline.series.values.begin() + static_cast<std::ptrdiff_t>(n_train),
                       pipeline.series.values.end());
    out.predictions.assign(pred.data(), pred.data() + pred.size());
    out.std_score = nrmse(out.predictions, out.targets, nrmse_norm::std_dev);
    out.range_score = nrmse(out.predictions, out.targets, nrmse_norm::range);
    return out;
}

double evaluate_network(const reservoir_network& net, const task_pipeline& pipeline)
{
    return run_task(net, pipeline).selected(pipeline.normalization).nrmse;
}

}  // namespace snnrc
