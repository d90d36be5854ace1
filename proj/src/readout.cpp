#include "snnrc/readout.hpp"

#include <string>

namespace snnrc {

std::string_view to_string(nrmse_norm n)
{
    return n == nrmse_norm::range ? "range" : "std";
}

nrmse_norm nrmse_norm_from_string(std::string_view s)
{
    if (s == "std") return nrmse_norm::std_dev;
    if (s == "range") return nrmse_norm::range;
    throw config_error{"unknown NRMSE normalization '" + std::string{s} + "' (expected std or range)"};
}

score nrmse(std::span<const double> predictions, std::span<const double> targets, nrmse_norm normalization)
{
    if (predictions.size() != targets.size()) throw config_error{"nrmse: length mismatch"};
    if (targets.size() < 2) throw config_error{"nrmse: need at least two samples"};
    double se = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) se += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
    score out;
    out.normalization = normalization;
    out.rmse = std::sqrt(se / static_cast<double>(targets.size()));
    const auto stats = describe<double>(targets);
    const double scale = normalization == nrmse_norm::range ? stats.max - stats.min : stats.std_dev;
    if (!(scale > 0.0)) throw pipeline_error{"nrmse: target normalizer is zero"};
    out.nrmse = out.rmse / scale;
    return out;
}

}  // namespace snnrc
