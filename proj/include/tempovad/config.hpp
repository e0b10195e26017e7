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

#include <cstdint>
#include <string>

#include "tempovad/data_harness.hpp"
#include "tempovad/dsp_features.hpp"
#include "tempovad/energy.hpp"
#include "tempovad/trainer.hpp"

namespace tempovad {

/// Every tunable in one place, loadable from a key=value text file.
/// Unknown keys are rejected; `dump()` is the resolved-config log every
/// run emits.
struct RunConfig {
  FeatureConfig feature;
  EncoderConfig encoder;
  NeuronParams neuron = NeuronParams::make_default();
  TrainConfig train;
  EnergyConstants energy;
  SopRule sop_rule = SopRule::PerOutputEvent;
  SynthConfig synth;
  std::uint64_t seed = 0;

  /// Apply one `section.key=value` assignment; throws on unknown keys or
  /// unparsable values.
  void set(const std::string& key, const std::string& value);

  /// Load a file of assignments, one per line; '#' starts a comment.
  void load_file(const std::string& path);

  /// The resolved configuration, in loadable key=value form.
  std::string dump() const;
};

}  // namespace tempovad
