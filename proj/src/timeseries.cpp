#include "snnrc/timeseries.hpp"

#include "snnrc/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace snnrc {

time_series gen_henon(const henon_params& params, std::size_t n_steps)
{
    if (n_steps < 1) throw config_error{"gen_henon: n_steps must be >= 1"};
    time_series out;
    out.values.reserve(n_steps);
    double x = params.x0;
    double y = params.y0;
    for (std::size_t n = 1; n <= n_steps; ++n) {
        const double x_next = y + 1.0 - params.a * x * x;
        y = params.b * x;
        x = x_next;
        if (!std::isfinite(x) || std::abs(x) > 1e6) {
            throw pipeline_error{"gen_henon: orbit diverged at step " + std::to_string(n)};
        }
        out.values.push_back(x);
    }
    std::ostringstream origin;
    origin << std::setprecision(17) << "henon(a=" << params.a << ",b=" << params.b
           << ",x0=" << params.x0 << ",y0=" << params.y0 << ")";
    out.origin = origin.str();
    return out;
}

std::vector<double> henon_recurrence(const henon_params& params, std::size_t n_steps)
{
    std::vector<double> xs;
    if (n_steps == 0) return xs;
    const auto head = gen_henon(params, std::min<std::size_t>(n_steps, 2)).values;
    xs.assign(head.begin(), head.end());
    for (std::size_t n = 2; n < n_steps; ++n) {
        xs.push_back(1.0 + params.b * xs[n - 2] - params.a * xs[n - 1] * xs[n - 1]);
    }
    return xs;
}

std::size_t steps_in(double span, double dt)
{
    if (!(dt > 0.0)) throw config_error{"time step must be positive"};
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
        std::ostringstream msg;
        msg << "span " << span << " is not a positive integer multiple of dt " << dt;
        throw config_error{msg.str()};
    }
    return static_cast<std::size_t>(rounded);
}

time_series gen_mackey_glass(const mackey_glass_params& p, std::size_t n_samples)
{
    if (n_samples < 1) throw config_error{"gen_mackey_glass: n_samples must be >= 1"};
    const std::size_t lag = steps_in(p.tau_delay, p.euler_dt);
    const std::size_t stride = steps_in(p.sample_interval, p.euler_dt);

    // history[k % lag] holds x_{k - lag} when step k is taken.
    std::vector<double> history(lag, p.history_init);
    time_series out;
    out.values.reserve(n_samples);
    double x = p.history_init;
    out.values.push_back(x);
    for (std::size_t k = 0; out.values.size() < n_samples; ++k) {
        const std::size_t slot = k % lag;
        const double delayed = history[slot];
        const double dx = p.beta * delayed / (1.0 + std::pow(delayed, p.eta)) - p.gamma * x;
        history[slot] = x;
        x += p.euler_dt * dx;
        if (!std::isfinite(x)) {
            std::ostringstream msg;
            msg << "gen_mackey_glass: non-finite state at t=" << static_cast<double>(k + 1) * p.euler_dt;
            throw pipeline_error{msg.str()};
        }
        if ((k + 1) % stride == 0) out.values.push_back(x);
    }
    std::ostringstream origin;
    origin << std::setprecision(17) << "mackey_glass(beta=" << p.beta << ",gamma=" << p.gamma
           << ",eta=" << p.eta << ",tau=" << p.tau_delay << ",dt=" << p.euler_dt
           << ",sample=" << p.sample_interval << ",x0=" << p.history_init << ")";
    out.origin = origin.str();
    return out;
}

series_split split_series(const time_series& series, double train_fraction, std::size_t washout)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw config_error{"split_series: train_fraction must lie in (0, 1)"};
    }
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(series.size()) * train_fraction + 1e-9));
    if (n_train == 0 || n_train >= series.size()) {
        throw config_error{"split_series: empty partition"};
    }
    if (washout >= n_train) throw config_error{"split_series: washout must be shorter than the training part"};
    series_split out;
    out.train.values.assign(series.values.begin(), series.values.begin() + n_train);
    out.test.values.assign(series.values.begin() + n_train, series.values.end());
    out.train.origin = series.origin;
    out.test.origin = series.origin;
    out.washout = washout;
    return out;
}

void write_series_csv(std::ostream& os, const time_series& series)
{
    os << "index,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < series.size(); ++i) os << i << ',' << series[i] << '\n';
}

}  // namespace snnrc
