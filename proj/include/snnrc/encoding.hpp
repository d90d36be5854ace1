#pragma once

// Spatial one-hot encoding of a scalar series onto input neurons.

#include "snnrc/timeseries.hpp"

#include <cstddef>
#include <vector>

namespace snnrc {

struct encoding_config {
    std::size_t m_in = 50;
    double series_min = 0.0;
    double series_max = 1.0;

    void validate() const;
};

/// Window n drives input number schedule[n] (1-based).
using input_schedule = std::vector<std::size_t>;

/// Scales [min, max] onto [1, m_in] and rounds half up; values outside the
/// range are clamped to the endpoints.
std::size_t discretize(double value, const encoding_config& config);

input_schedule build_schedule(const time_series& series, const encoding_config& config);

/// Copies min/max of `fit_on` into the config.
encoding_config fit_range(encoding_config config, const time_series& fit_on);

}  // namespace snnrc
