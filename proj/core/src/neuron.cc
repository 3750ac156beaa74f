#include "snnlab/neuron.h"

#include <cmath>
#include <string>

#include "snnlab/error.h"

namespace snnlab {

void NeuronConfig::Validate() const {
  if (!(tau_m > 0.0)) {
    throw InvalidArgument("tau_m must be positive or infinite, got " +
                          std::to_string(tau_m));
  }
  if (!(v_th > u_rest)) {
    throw InvalidArgument("v_th must exceed u_rest");
  }
  if (!(epsilon >= 0.0)) {
    throw InvalidArgument("epsilon must be non-negative");
  }
}

double DecayFactor(const NeuronConfig& cfg) {
  if (cfg.is_integrate_and_fire()) return 1.0;
  return std::exp(-1.0 / cfg.tau_m);
}

void IntegrateStep(const NeuronConfig& cfg, std::span<const double> weighted_input,
                   LayerState& state, std::span<double> pre_reset) {
  const std::size_t n = state.size();
  if (weighted_input.size() != n || state.o.size() != n) {
    throw DimensionError("IntegrateStep: input has " +
                         std::to_string(weighted_input.size()) +
                         " units, state has " + std::to_string(n));
  }
  if (!pre_reset.empty() && pre_reset.size() != n) {
    throw DimensionError("IntegrateStep: pre_reset buffer size mismatch");
  }
  const double decay = DecayFactor(cfg);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = state.u[i] + weighted_input[i];
    if (!pre_reset.empty()) pre_reset[i] = u;
    if (u > cfg.v_th) {
      state.o[i] = 1.0;
      state.u[i] = cfg.u_rest;
    } else {
      state.o[i] = 0.0;
      state.u[i] = decay * u;
    }
  }
}

void AccumulateOutputStep(const NeuronConfig& cfg,
                          std::span<const double> weighted_input,
                          LayerState& state) {
  const std::size_t n = state.size();
  if (weighted_input.size() != n) {
    throw DimensionError("AccumulateOutputStep: input has " +
                         std::to_string(weighted_input.size()) +
                         " units, state has " + std::to_string(n));
  }
  const double decay = DecayFactor(cfg);
  for (std::size_t i = 0; i < n; ++i) {
    state.u[i] = decay * state.u[i] + weighted_input[i];
  }
}

}  // namespace snnlab
