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

#include "tempovad/bin_encoder.hpp"

namespace tempovad {

/// How synaptic operations per frame are counted for the two-neuron output
/// layer. PerOutputEvent adds one event per output neuron on top of the
/// delivered input spikes: (input_spikes + 1) * n_out, giving 129 x 2 for a
/// standard 128-spike frame. InputFanOut counts deliveries only:
/// input_spikes * n_out.
enum class SopRule { PerOutputEvent, InputFanOut };

struct Topology {
  int n_inputs = 1280;
  int n_outputs = 2;
  int total_neurons() const { return n_inputs + n_outputs; }
};

struct EventCounts {
  std::int64_t sop_per_frame = 0;
  std::int64_t active_updates = 0;
  std::int64_t inactive_updates = 0;
  double frames_per_s = 50.0;
};

/// Per-event dynamic energy. Defaults are the published Loihi figures
/// (Davies et al., "Loihi: A Neuromorphic Manycore Processor with On-Chip
/// Learning", IEEE Micro 2018): 23.6 pJ per synaptic operation, 81 pJ per
/// active neuron update, 52 pJ per inactive neuron update.
struct EnergyConstants {
  double e_sop_j = 23.6e-12;
  double e_update_active_j = 81e-12;
  double e_update_inactive_j = 52e-12;
  std::string provenance =
      "Loihi measurements, Davies et al., IEEE Micro 2018";

  void validate() const;
};

/// Event accounting for one encoded frame. active = input spikes + output
/// spikes; inactive = remaining neurons. The bin code fixes the input
/// spike count, so these counts are signal-independent for a given output
/// spike count (the basis of the constant-power property).
EventCounts count_events(const SpikePattern& pattern, int output_spikes,
                         const Topology& topology = Topology{},
                         SopRule rule = SopRule::PerOutputEvent,
                         double frames_per_s = 50.0);

/// Dynamic power in watts:
/// (e_sop*sop + e_active*active + e_inactive*inactive) * frames_per_s.
/// Covers dynamic events only; feature extraction and static power are out
/// of scope, so this is a lower bound.
double estimate_power(const EventCounts& counts, const EnergyConstants& consts);

/// Human-readable table of counts, constants (with provenance) and watts.
std::string energy_table(const EventCounts& counts,
                         const EnergyConstants& consts);

}  // namespace tempovad
