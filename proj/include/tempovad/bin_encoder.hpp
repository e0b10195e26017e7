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

#include <string>
#include <vector>

#include "tempovad/common.hpp"
#include "tempovad/dsp_features.hpp"

namespace tempovad {

// Latency code over groups of n_in neurons per frequency band: the neuron
// index is the energy decile of the band value, the spike time decreases
// with the decile, and a within-bin jitter term separates values sharing a
// decile. Every band emits exactly one spike.
struct EncoderConfig {
  int n_in = 10;
  double t_interval_ms = 7.5;
  double offset_ms = 5.0;
  double jitter_divisor = 1.5;
  // offset + n_in * t_interval + 5 * tau_membrane, rounded up to 10 ms.
  // Leaves the membrane below 1% of threshold after the last possible spike.
  double duration_ms = 160.0;

  void validate() const;
};

struct SpikeEvent {
  int neuron_id = 0;  // band * n_in + bin index
  double time_ms = 0.0;
};

/// Timed input spikes for one frame, sorted by time (ties by neuron_id).
struct SpikePattern {
  std::vector<SpikeEvent> events;
  double duration_ms = 0.0;

  double last_spike_ms() const {
    double last = 0.0;
    for (const auto& e : events) last = std::max(last, e.time_ms);
    return last;
  }
};

/// Energy decile of `val`: min(floor(val * n_in), n_in - 1). The top bin is
/// closed, so 1.0 maps to n_in - 1. Values outside [0, 1] are rejected.
int bin_index(double val, const EncoderConfig& cfg);

/// Spike latency for `val`: bins count down from the latest slot, plus a
/// within-bin jitter proportional to the distance above the bin's lower
/// edge, plus the fixed onset offset.
double spike_time(double val, const EncoderConfig& cfg);

/// Inverse of (bin_index, spike_time): recovers the encoded value from a
/// spike's neuron index and time.
double decode_value(int neuron_id, double time_ms, const EncoderConfig& cfg);

/// One spike per band: neuron_id = band * n_in + bin_index(v), time =
/// spike_time(v). Events sorted by time, ties by ascending neuron_id.
SpikePattern encode_frame(const FeatureFrame& frame, const EncoderConfig& cfg);

// Spike-pattern file: header `TVSPK v1 n=<count> dur=<ms>`, then one
// `neuron_id time_ms` pair per line, sorted by time.
void write_pattern(const std::string& path, const SpikePattern& pattern);
SpikePattern read_pattern(const std::string& path);

}  // namespace tempovad
