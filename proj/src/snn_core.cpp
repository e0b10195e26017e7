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

#include "tempovad/snn_core.hpp"

#include <cmath>
#include <limits>

namespace tempovad {

void NeuronParams::validate() const {
  require(tau_ms > tau_s_ms && tau_s_ms > 0,
          "need tau > tau_s > 0 for a double-exponential kernel");
  require(v_thr > v_rest, "threshold must exceed the resting voltage");
  require(v_min <= v_rest, "voltage floor must not exceed the resting voltage");
}

double NeuronParams::effective_v0() const {
  if (v0 != 0.0) return v0;
  NeuronParams raw = *this;
  raw.v0 = 1.0;
  return 1.0 / kernel_peak(raw).k_peak;
}

NeuronParams NeuronParams::make_default() {
  NeuronParams p;
  p.v0 = p.effective_v0();
  return p;
}

double kernel(double dt_ms, const NeuronParams& params) {
  if (dt_ms <= 0.0) return 0.0;
  return params.effective_v0() *
         (std::exp(-dt_ms / params.tau_ms) - std::exp(-dt_ms / params.tau_s_ms));
}

KernelPeak kernel_peak(const NeuronParams& params) {
  require(params.tau_ms != params.tau_s_ms,
          "kernel peak undefined for tau == tau_s");
  params.validate();
  const double tau = params.tau_ms, tau_s = params.tau_s_ms;
  const double t_peak = tau * tau_s / (tau - tau_s) * std::log(tau / tau_s);
  return KernelPeak{t_peak, kernel(t_peak, params)};
}

NeuronTrace simulate(const SpikePattern& pattern, const SynapseVector& weights,
                     const NeuronParams& params, double threshold_shift,
                     double dt_sim_ms, Vector* voltage_out) {
  params.validate();
  require(dt_sim_ms > 0, "simulation step must be positive");

  for (std::size_t i = 0; i + 1 < pattern.events.size(); ++i) {
    require(pattern.events[i].time_ms <= pattern.events[i + 1].time_ms,
            "pattern events must be sorted by time");
  }
  for (const auto& e : pattern.events) {
    require(e.time_ms >= 0 && e.time_ms <= pattern.duration_ms,
            "event time outside the pattern window");
  }

  const double v0 = params.effective_v0();
  const double thr = params.v_thr + threshold_shift;
  const double decay_m = std::exp(-dt_sim_ms / params.tau_ms);
  const double decay_s = std::exp(-dt_sim_ms / params.tau_s_ms);
  const auto n_steps =
      static_cast<Eigen::Index>(std::llround(pattern.duration_ms / dt_sim_ms));

  // Two running exponential sums; adding each event with an exact
  // exponential of its own age keeps the grid values free of step error.
  double sum_m = 0.0, sum_s = 0.0;
  std::size_t next_event = 0;

  NeuronTrace trace;
  if (voltage_out != nullptr) voltage_out->resize(n_steps + 1);
  Eigen::Index recorded = 0;
  double v_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k <= n_steps; ++k) {
    const double t = k * dt_sim_ms;
    if (k > 0) {
      sum_m *= decay_m;
      sum_s *= decay_s;
    }
    while (next_event < pattern.events.size() &&
           pattern.events[next_event].time_ms <= t) {
      const SpikeEvent& e = pattern.events[next_event];
      require(e.neuron_id >= 0 && e.neuron_id < weights.weights.size(),
              "event neuron_id " + std::to_string(e.neuron_id) +
                  " outside the weight vector");
      const double c = weights.weights[e.neuron_id] * v0;
      const double age = t - e.time_ms;
      sum_m += c * std::exp(-age / params.tau_ms);
      sum_s += c * std::exp(-age / params.tau_s_ms);
      ++next_event;
    }
    double v = sum_m - sum_s + params.v_rest;
    if (v < params.v_min) v = params.v_min;  // floor on the summed voltage
    if (voltage_out != nullptr) {
      (*voltage_out)[k] = v;
      recorded = k + 1;
    }
    if (v >= v_max) {  // ties resolve to the latest time
      v_max = v;
      trace.t_max_ms = t;
    }
    if (v >= thr) {
      trace.first_spike_ms = t;
      trace.crossed_threshold = true;
      break;  // single-spike semantics: integration stops here
    }
  }
  trace.v_max = v_max;
  if (voltage_out != nullptr) voltage_out->conservativeResize(recorded);
  return trace;
}

}  // namespace tempovad
