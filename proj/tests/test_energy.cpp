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

#include <stdexcept>

#include <doctest.h>

#include "tempovad/bin_encoder.hpp"
#include "tempovad/energy.hpp"
#include "tempovad/rng.hpp"

using namespace tempovad;

namespace {

/// A standard 128-spike encoded frame from random in-range band values.
SpikePattern random_pattern(Rng& rng) {
  FeatureFrame frame;
  frame.values = Vector(128);
  for (int b = 0; b < 128; ++b) frame.values[b] = rng.uniform();
  return encode_frame(frame, EncoderConfig{});
}

SpikePattern empty_pattern() {
  SpikePattern p;
  p.duration_ms = 160.0;
  return p;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("the standard frame accounting") {
  Rng rng(808);
  const SpikePattern pattern = random_pattern(rng);
  REQUIRE(pattern.events.size() == 128);
  const EventCounts counts = count_events(pattern, 1);
  CHECK(counts.sop_per_frame == 258);  // (128 + 1) * 2
  CHECK(counts.active_updates == 129);  // 128 input spikes + 1 output spike
  CHECK(counts.inactive_updates == 1153);  // 1282 - 129
  CHECK(counts.frames_per_s == 50.0);
}

TEST_CASE("counts do not depend on the signal content") {
  Rng rng(809);
  const EventCounts ref = count_events(random_pattern(rng), 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const EventCounts c = count_events(random_pattern(rng), 1);
    CHECK(c.sop_per_frame == ref.sop_per_frame);
    CHECK(c.active_updates == ref.active_updates);
    CHECK(c.inactive_updates == ref.inactive_updates);
  }
}

TEST_CASE("an empty frame still charges the per-output events") {
  const EventCounts counts = count_events(empty_pattern(), 0);
  // Zero input spikes: sop = (0 + 1) * 2 documents the +1-per-output
  // convention in isolation.
  CHECK(counts.sop_per_frame == 2);
  CHECK(counts.active_updates == 0);
  CHECK(counts.inactive_updates == 1282);
}

TEST_CASE("output spike count feeds the active split only") {
  Rng rng(810);
  const SpikePattern pattern = random_pattern(rng);
  const EventCounts c0 = count_events(pattern, 0);
  CHECK(c0.sop_per_frame == 258);
  CHECK(c0.active_updates == 128);
  CHECK(c0.inactive_updates == 1154);
  const EventCounts c2 = count_events(pattern, 2);
  CHECK(c2.active_updates == 130);
  CHECK(c2.inactive_updates == 1152);
}

TEST_CASE("the fan-out rule drops the per-output extra event") {
  Rng rng(811);
  const EventCounts counts =
      count_events(random_pattern(rng), 1, Topology{}, SopRule::InputFanOut);
  CHECK(counts.sop_per_frame == 256);  // 128 * 2
}

TEST_CASE("zero constants give zero power") {
  Rng rng(812);
  EnergyConstants consts;
  consts.e_sop_j = 0.0;
  consts.e_update_active_j = 0.0;
  consts.e_update_inactive_j = 0.0;
  CHECK(estimate_power(count_events(random_pattern(rng), 1), consts) == 0.0);
}

TEST_CASE("power is linear in each constant") {
  Rng rng(813);
  const EventCounts counts = count_events(random_pattern(rng), 1);
  const EnergyConstants base;
  const double p = estimate_power(counts, base);
  EnergyConstants doubled = base;
  doubled.e_sop_j *= 2.0;
  doubled.e_update_active_j *= 2.0;
  doubled.e_update_inactive_j *= 2.0;
  CHECK(estimate_power(counts, doubled) == doctest::Approx(2.0 * p));

  EnergyConstants sop_only = base;
  sop_only.e_update_active_j = 0.0;
  sop_only.e_update_inactive_j = 0.0;
  EnergyConstants updates_only = base;
  updates_only.e_sop_j = 0.0;
  CHECK(estimate_power(counts, sop_only) +
            estimate_power(counts, updates_only) ==
        doctest::Approx(p).epsilon(1e-15));
}

TEST_CASE("the default constants land in the expected microwatt range") {
  Rng rng(814);
  const EventCounts counts = count_events(random_pattern(rng), 1);
  const double p = estimate_power(counts, EnergyConstants{});
  // Closed form: (258*23.6 + 129*81 + 1153*52) pJ * 50 /s = 3.82469e-6 W.
  CHECK(p == doctest::Approx(3.82469e-6).epsilon(1e-6));
  CHECK(p > 0.5 * 3.8e-6);
  CHECK(p < 2.0 * 3.8e-6);
}

TEST_CASE("invalid constants are rejected") {
  EnergyConstants consts;
  consts.e_sop_j = -1.0;
  CHECK_THROWS_AS(consts.validate(), std::invalid_argument);
  consts = EnergyConstants{};
  consts.e_update_inactive_j = -1e-12;
  CHECK_THROWS_AS(consts.validate(), std::invalid_argument);
}

TEST_CASE("impossible output spike counts are rejected") {
  Rng rng(815);
  const SpikePattern pattern = random_pattern(rng);
  CHECK_THROWS_AS(count_events(pattern, -1), std::invalid_argument);
  CHECK_THROWS_AS(count_events(pattern, 3), std::invalid_argument);
}

TEST_CASE("the table names its sources and units") {
  Rng rng(816);
  const EventCounts counts = count_events(random_pattern(rng), 1);
  const std::string table = energy_table(counts, EnergyConstants{});
  CHECK(table.find("Davies") != std::string::npos);
  CHECK(table.find("uW") != std::string::npos);
  CHECK(table.find("258") != std::string::npos);
  CHECK(table.find("lower bound") != std::string::npos);
}

}  // TEST_SUITE
