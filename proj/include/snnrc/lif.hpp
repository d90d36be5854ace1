#pragma once

// Leaky integrate-and-fire neuron updates.
//
// Two models are provided: a continuous-valued LIF integrated with forward
// Euler, and an integer model that reproduces the fixed-point arithmetic of
// the Loihi 2 LIF neuron (12-bit decay constants, thresholds and synaptic
// input in units of 64).

#include <cstdint>

namespace snnrc {

struct continuous_lif_params {
    double tau_m = 1.0;
    double v_rest = 0.0;
    double v_reset = 0.0;
    double v_thresh = 5.0;
    double r_membrane = 1.0;

    /// Throws config_error unless tau_m > 0 and v_thresh > v_reset.
    void validate() const;
};

struct continuous_state {
    double v = 0.0;
};

/// One Euler step of tau_m dV/dt = -(V - V_rest) + R I. Returns true and
/// resets V when the updated potential reaches the threshold.
/// Throws pipeline_error on a non-finite potential.
bool step_continuous(continuous_state& state, const continuous_lif_params& params, double i_total, double dt);

/// Scale between integer mantissas and effective state units.
inline constexpr std::int32_t fixed_point_unit = 64;
inline constexpr std::int32_t decay_unity = 4096;
inline constexpr std::int32_t decay_max = 4095;

struct fixed_point_lif_params {
    std::int32_t du = 0;
    std::int32_t dv = 0;
    std::int32_t vth_mant = 0;
    std::int32_t bias_mant = 0;

    std::int32_t threshold() const { return vth_mant * fixed_point_unit; }
    std::int32_t bias() const { return bias_mant * fixed_point_unit; }

    void validate() const;
};

struct fixed_point_state {
    std::int32_t u = 0;
    std::int32_t v = 0;
};

/// value * (4096 - d) / 4096 truncated toward zero; d = 4095 decays fully.
constexpr std::int64_t fixed_point_decay(std::int64_t value, std::int32_t d)
{
    if (d >= decay_max) return 0;
    const std::int64_t prod = value * (decay_unity - d);
    return prod < 0 ? -((-prod) >> 12) : (prod >> 12);
}

/// One timestep of the integer LIF:
///   u <- decay(u, du) + a_in
///   v <- decay(v, dv) + u + bias
///   spike iff v > threshold, then v <- 0
/// `a_in` is already in state units (payload * 64 per spike).
/// Throws pipeline_error when u or v leaves the signed 32-bit range.
bool step_fixed_point(fixed_point_state& state, const fixed_point_lif_params& params, std::int64_t a_in);

}  // namespace snnrc
