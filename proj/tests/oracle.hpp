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

// Brute-force reference implementations used only by the tests. These are
// written independently of the library: plain scalars, full per-sample
// sums over all events, no shared helpers. Any agreement between library
// and oracle is therefore evidence, not tautology.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

struct Event {
  int neuron_id;
  double time_ms;
};

inline double kernel(double dt, double v0, double tau, double tau_s) {
  if (dt <= 0.0) return 0.0;
  return v0 * (std::exp(-dt / tau) - std::exp(-dt / tau_s));
}

struct SimResult {
  bool spiked = false;
  double t_spike = 0.0;
  double v_max = 0.0;
  double t_max = 0.0;
};

/// O(grid x events) reference simulation: at each grid time, sum the
/// kernel over every event from scratch. Ties in the running maximum
/// resolve to the latest time; crossing uses >=; integration stops at the
/// first spike.
inline SimResult simulate(const std::vector<Event>& events,
                          const std::vector<double>& weights, double v0,
                          double tau, double tau_s, double v_rest,
                          double v_min, double threshold, double duration,
                          double dt) {
  SimResult r;
  r.v_max = -1.0 / 0.0;
  const long n = std::lround(duration / dt);
  for (long k = 0; k <= n; ++k) {
    const double t = k * dt;
    double v = v_rest;
    for (const Event& e : events) {
      v += weights[static_cast<std::size_t>(e.neuron_id)] *
           kernel(t - e.time_ms, v0, tau, tau_s);
    }
    if (v < v_min) v = v_min;
    if (v >= r.v_max) {
      r.v_max = v;
      r.t_max = t;
    }
    if (v >= threshold) {
      r.spiked = true;
      r.t_spike = t;
      break;
    }
  }
  return r;
}

/// Reference weight change: lambda * sum of K(anchor - t_j) over events
/// with t_j strictly before the anchor, accumulated per synapse, times
/// `sign`.
inline std::vector<double> weight_delta(const std::vector<Event>& events,
                                        std::size_t n_synapses, double anchor,
                                        double lambda, double sign, double v0,
                                        double tau, double tau_s) {
  std::vector<double> delta(n_synapses, 0.0);
  for (const Event& e : events) {
    if (e.time_ms < anchor) {
      delta[static_cast<std::size_t>(e.neuron_id)] +=
          sign * lambda * kernel(anchor - e.time_ms, v0, tau, tau_s);
    }
  }
  return delta;
}

/// Closed-form spike latency, written straight from the defining formulas
/// with no shared code: n = min(floor(v*N), N-1),
/// t = (N-1-n)*t_int + (v*N - n)*t_int/1.5 + offset.
inline double spike_time(double val, int n_in, double t_interval,
                         double offset, double jitter_divisor) {
  int n = static_cast<int>(std::floor(val * n_in));
  if (n > n_in - 1) n = n_in - 1;
  const double intensity_diff =
      (val * n_in - n) * t_interval / jitter_divisor;
  return (n_in - 1 - n) * t_interval + intensity_diff + offset;
}

}  // namespace oracle
