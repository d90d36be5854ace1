#include "snnrc/encoding.hpp"

#include "snnrc/error.hpp"

#include <algorithm>
#include <cmath>

namespace snnrc {

void encoding_config::validate() const
{
    if (m_in < 2) throw config_error{"encoding: m_in must be >= 2"};
    if (!(series_max > series_min)) throw config_error{"encoding: degenerate value range (max <= min)"};
}

std::size_t discretize(double value, const encoding_config& config)
{
    if (!(config.series_max > config.series_min)) throw config_error{"encoding: degenerate value range (max <= min)"};
    const double clamped = std::clamp(value, config.series_min, config.series_max);
    const double scaled = 1.0 + (clamped - config.series_min) / (config.series_max - config.series_min)
                                  * static_cast<double>(config.m_in - 1);
    const auto index = static_cast<std::size_t>(std::floor(scaled + 0.5));
    return std::clamp<std::size_t>(index, 1, config.m_in);
}

input_schedule build_schedule(const time_series& series, const encoding_config& config)
{
    config.validate();
    input_schedule schedule;
    schedule.reserve(series.size());
    for (double v : series.values) schedule.push_back(discretize(v, config));
    return schedule;
}

encoding_config fit_range(encoding_config config, const time_series& fit_on)
{
    if (fit_on.size() == 0) throw config_error{"encoding: cannot fit range on an empty series"};
    const auto [lo, hi] = std::ranges::minmax(fit_on.values);
    config.series_min = lo;
    config.series_max = hi;
    return config;
}

}  // namespace snnrc
