#pragma once

// Benchmark sequence generation: the Henon map and the Mackey-Glass delay
// differential equation, plus the contiguous train/test split.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace snnrc {

struct henon_params {
    double a = 1.4;
    double b = 0.3;
    double x0 = 0.0;
    double y0 = 0.0;
};

struct mackey_glass_params {
    double beta = 0.2;
    double gamma = 0.1;
    double eta = 10.0;
    double tau_delay = 18.0;
    double euler_dt = 0.15;
    double sample_interval = 3.0;
    double history_init = 1.2;
};

struct time_series {
    std::vector<double> values;
    /// Free-form description of how the values were produced.
    std::string origin = "external";

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// x-coordinates x_1..x_n of the two-dimensional Henon map started at (x0, y0).
/// Throws pipeline_error when |x| exceeds 1e6.
time_series gen_henon(const henon_params& params, std::size_t n_steps);

/// The scalar recurrence x_{n+1} = 1 + b x_{n-1} - a x_n^2 seeded with the
/// first two values of the two-dimensional iteration.
std::vector<double> henon_recurrence(const henon_params& params, std::size_t n_steps);

/// Forward-Euler Mackey-Glass integration with a constant initial history.
/// The first sample is x(0) = history_init; subsequent samples are taken
/// every sample_interval time units.
time_series gen_mackey_glass(const mackey_glass_params& params, std::size_t n_samples);

/// Number of Euler steps spanned by `span`, which must be an integer multiple
/// of `dt` up to rounding.
std::size_t steps_in(double span, double dt);

struct series_split {
    time_series train;
    time_series test;
    /// Leading training windows excluded from regression targets.
    std::size_t washout = 0;
};

/// Contiguous prefix/suffix split; the training part gets floor(n * fraction)
/// values.
series_split split_series(const time_series& series, double train_fraction, std::size_t washout);

/// `index,value` CSV with 17 significant digits.
void write_series_csv(std::ostream& os, const time_series& series);

}  // namespace snnrc
