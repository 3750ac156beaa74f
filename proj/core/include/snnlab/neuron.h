#ifndef SNNLAB_NEURON_H_
#define SNNLAB_NEURON_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace snnlab {

inline constexpr double kInfiniteTau = std::numeric_limits<double>::infinity();

// Parameters of the discrete-time IF/LIF unit. tau_m is measured in
// time-steps; an infinite tau_m is the non-leaky IF model.
struct NeuronConfig {
  double tau_m = kInfiniteTau;
  double v_th = 1.0;
  double u_rest = 0.0;
  // Leak correction added to the threshold in the surrogate derivative.
  double epsilon = 0.0;

  static NeuronConfig IntegrateAndFire() { return NeuronConfig{}; }
  static NeuronConfig Leaky(double tau_m) {
    NeuronConfig cfg;
    cfg.tau_m = tau_m;
    return cfg;
  }

  bool is_integrate_and_fire() const { return tau_m == kInfiniteTau; }

  // Throws InvalidArgument unless tau_m > 0 (or infinite), v_th > u_rest and
  // epsilon >= 0.
  void Validate() const;

  bool operator==(const NeuronConfig&) const = default;
};

// exp(-1/tau_m); exactly 1 for the IF model.
double DecayFactor(const NeuronConfig& cfg);

// Membrane potentials and the most recent spike outputs of one layer.
struct LayerState {
  LayerState() = default;
  explicit LayerState(std::size_t units) : u(units, 0.0), o(units, 0.0) {}

  std::size_t size() const { return u.size(); }

  std::vector<double> u;
  std::vector<double> o;
};

// One forward step of a spiking layer: integrate the weighted input, emit a
// spike where the potential strictly exceeds v_th and reset it to u_rest,
// otherwise apply the decay. If `pre_reset` is non-empty it receives the
// integrated potential before reset/decay.
void IntegrateStep(const NeuronConfig& cfg, std::span<const double> weighted_input,
                   LayerState& state, std::span<double> pre_reset = {});

// One step of the non-spiking output layer: u <- decay * u + input.
void AccumulateOutputStep(const NeuronConfig& cfg,
                          std::span<const double> weighted_input,
                          LayerState& state);

// Straight-through surrogate of dO/dU: 1/(v_th + epsilon) on spiking units.
inline double SurrogateGrad(double spike, const NeuronConfig& cfg) {
  return spike > 0.0 ? 1.0 / (cfg.v_th + cfg.epsilon) : 0.0;
}

}  // namespace snnlab

#endif  // SNNLAB_NEURON_H_
