// Copyright 2026 The tempovad authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include "tempovad/bin_encoder.hpp"
#include "tempovad/common.hpp"

namespace tempovad {

/// LIF output neuron constants. The double-exponential synaptic kernel
/// peaks at t_peak = tau*tau_s/(tau-tau_s) * ln(tau/tau_s); by default v0
/// is chosen so a unit weight yields a unit PSP amplitude. Set
/// v0 = 1.0 explicitly for the un-normalized kernel.
struct NeuronParams {
  double v_rest = 0.0;
  double v_thr = 1.0;
  double tau_ms = 15.0;
  double tau_s_ms = 3.75;
  double v0 = 0.0;  // 0 means "normalize so the kernel peak is 1"
  double v_min = -1.5;

  void validate() const;
  /// Defaults with v0 resolved to the peak-normalizing value.
  static NeuronParams make_default();
  /// v0 as used by the kernel (resolves the 0 = auto-normalize convention).
  double effective_v0() const;
};

/// Synaptic weights with the box constraint applied after every update.
struct SynapseVector {
  Vector weights;
  double w_min = -1.5;
  double w_max = 1.5;

  static SynapseVector zeros(Eigen::Index n) {
    SynapseVector s;
    s.weights = Vector::Zero(n);
    return s;
  }
};

/// Result of simulating one output neuron on one pattern. When the neuron
/// spikes, v_max and t_max refer to the crossing point; otherwise they
/// locate the voltage maximum over the whole window (ties resolved to the
/// latest grid time, so a flat trace anchors updates after every input).
struct NeuronTrace {
  std::optional<double> first_spike_ms;
  double v_max = 0.0;
  double t_max_ms = 0.0;
  bool crossed_threshold = false;
};

/// Synaptic kernel: 0 for dt <= 0, else v0*(exp(-dt/tau) - exp(-dt/tau_s)).
double kernel(double dt_ms, const NeuronParams& params);

/// Kernel maximum: closed-form peak time and the kernel value there.
struct KernelPeak {
  double t_peak_ms;
  double k_peak;
};
KernelPeak kernel_peak(const NeuronParams& params);

constexpr double kDefaultSimStepMs = 0.1;

/// Membrane voltage on a uniform grid over [0, pattern.duration_ms]:
/// V(t) = sum over events of w[id] * kernel(t - t_event) + v_rest, clamped
/// below at v_min pointwise. Records the first grid time with
/// V >= v_thr + threshold_shift (input integration halts there) and the
/// pre-spike voltage maximum. Exponentials are evaluated exactly per event;
/// the grid only chooses the sample times. When voltage_out is non-null it
/// receives V at every evaluated grid point (the trace ends at the spike).
NeuronTrace simulate(const SpikePattern& pattern, const SynapseVector& weights,
                     const NeuronParams& params, double threshold_shift = 0.0,
                     double dt_sim_ms = kDefaultSimStepMs,
                     Vector* voltage_out = nullptr);

}  // namespace tempovad
