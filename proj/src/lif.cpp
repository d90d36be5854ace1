#include "snnrc/lif.hpp"

#include "snnrc/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace snnrc {

void continuous_lif_params::validate() const
{
    if (!(tau_m > 0.0)) throw config_error{"LIF tau_m must be positive"};
    if (!(v_thresh > v_reset)) throw config_error{"LIF v_thresh must exceed v_reset"};
}

bool step_continuous(continuous_state& state, const continuous_lif_params& params, double i_total, double dt)
{
    state.v += dt / params.tau_m * (-(state.v - params.v_rest) + params.r_membrane * i_total);
    if (!std::isfinite(state.v)) throw pipeline_error{"LIF membrane potential became non-finite"};
    if (state.v >= params.v_thresh) {
        state.v = params.v_reset;
        return true;
    }
    return false;
}

void fixed_point_lif_params::validate() const
{
    if (du < 0 || du > decay_max) throw config_error{"fixed-point du must lie in [0, 4095]"};
    if (dv < 0 || dv > decay_max) throw config_error{"fixed-point dv must lie in [0, 4095]"};
    if (vth_mant < 0) throw config_error{"fixed-point vth_mant must be non-negative"};
    constexpr std::int32_t mant_limit = std::numeric_limits<std::int32_t>::max() / fixed_point_unit;
    if (vth_mant > mant_limit || bias_mant > mant_limit || bias_mant < -mant_limit) {
        throw config_error{"fixed-point mantissa exceeds the 32-bit state range"};
    }
}

namespace {

std::int32_t narrow_checked(std::int64_t value, const char* what)
{
    if (value > std::numeric_limits<std::int32_t>::max() || value < std::numeric_limits<std::int32_t>::min()) {
        throw pipeline_error{std::string{"fixed-point overflow in "} + what + " (" + std::to_string(value) + ")"};
    }
    return static_cast<std::int32_t>(value);
}

}  // namespace

bool step_fixed_point(fixed_point_state& state, const fixed_point_lif_params& params, std::int64_t a_in)
{
    const std::int32_t u = narrow_checked(fixed_point_decay(state.u, params.du) + a_in, "current u");
    const std::int32_t v = narrow_checked(
      fixed_point_decay(state.v, params.dv) + std::int64_t{u} + std::int64_t{params.bias()}, "voltage v");
    state.u = u;
    if (v > params.threshold()) {
        state.v = 0;
        return true;
    }
    state.v = v;
    return false;
}

}  // namespace snnrc
