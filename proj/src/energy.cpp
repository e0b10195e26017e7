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

#include "tempovad/energy.hpp"

#include <cstdio>
#include <sstream>

namespace tempovad {

void EnergyConstants::validate() const {
  require(e_sop_j > 0 && e_update_active_j > 0 && e_update_inactive_j > 0,
          "energy constants must be positive");
}

EventCounts count_events(const SpikePattern& pattern, int output_spikes,
                         const Topology& topology, SopRule rule,
                         double frames_per_s) {
  require(output_spikes >= 0, "output spike count must be non-negative");
  require(output_spikes <= topology.n_outputs,
          "more output spikes than output neurons");
  const auto input_spikes = static_cast<std::int64_t>(pattern.events.size());

  EventCounts counts;
  counts.sop_per_frame =
      rule == SopRule::PerOutputEvent
          ? (input_spikes + 1) * topology.n_outputs
          : input_spikes * topology.n_outputs;
  counts.active_updates = input_spikes + output_spikes;
  counts.inactive_updates = topology.total_neurons() - counts.active_updates;
  require(counts.inactive_updates >= 0,
          "more active events than neurons in the topology");
  counts.frames_per_s = frames_per_s;
  return counts;
}

// Pure linear form; constant positivity is enforced where configs are
// resolved, so degenerate constants (e.g. all zero) evaluate rather than
// throw.
double estimate_power(const EventCounts& counts,
                      const EnergyConstants& consts) {
  const double joules_per_frame =
      consts.e_sop_j * static_cast<double>(counts.sop_per_frame) +
      consts.e_update_active_j * static_cast<double>(counts.active_updates) +
      consts.e_update_inactive_j * static_cast<double>(counts.inactive_updates);
  return joules_per_frame * counts.frames_per_s;
}

std::string energy_table(const EventCounts& counts,
                         const EnergyConstants& consts) {
  std::ostringstream out;
  char buf[128];
  out << "event counts per frame\n";
  std::snprintf(buf, sizeof(buf), "  synaptic operations   %lld\n",
                static_cast<long long>(counts.sop_per_frame));
  out << buf;
  std::snprintf(buf, sizeof(buf), "  active neuron updates %lld\n",
                static_cast<long long>(counts.active_updates));
  out << buf;
  std::snprintf(buf, sizeof(buf), "  inactive updates      %lld\n",
                static_cast<long long>(counts.inactive_updates));
  out << buf;
  std::snprintf(buf, sizeof(buf), "  frames per second     %g\n",
                counts.frames_per_s);
  out << buf;
  out << "energy constants (" << consts.provenance << ")\n";
  std::snprintf(buf, sizeof(buf), "  per synaptic op       %.6g pJ\n",
                consts.e_sop_j * 1e12);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  per active update     %.6g pJ\n",
                consts.e_update_active_j * 1e12);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  per inactive update   %.6g pJ\n",
                consts.e_update_inactive_j * 1e12);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "dynamic power (lower bound, filters excluded): %.6g uW\n",
                estimate_power(counts, consts) * 1e6);
  out << buf;
  return out.str();
}

}  // namespace tempovad
