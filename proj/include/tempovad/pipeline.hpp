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
#include <string>
#include <vector>

#include "tempovad/snn_core.hpp"
#include "tempovad/trainer.hpp"

namespace tempovad {

enum class DecisionBasis { FirstSpike, VoltageFallback };

/// Raw per-frame decision before smoothing, with the traces' diagnostics.
struct RawPrediction {
  Label label = Label::NoVoice;
  DecisionBasis basis = DecisionBasis::VoltageFallback;
  std::optional<double> v_first_spike_ms;
  std::optional<double> n_first_spike_ms;
  double v_max = 0.0;
  double n_max = 0.0;
};

/// Smoothed binary labels, one per 20 ms hop.
struct SmoothedStream {
  std::vector<Label> labels;
};

/// First spike wins; if only one neuron spiked it wins; if neither spiked
/// the higher voltage maximum wins. Exact ties go to NoVoice.
RawPrediction decide_frame(const NeuronTrace& trace_v,
                           const NeuronTrace& trace_n);

/// Causal majority vote over the current frame and up to four predecessors.
/// The window shrinks at stream start and drops its oldest frame whenever
/// the available window is even, so every vote is over an odd window.
SmoothedStream smooth(const std::vector<RawPrediction>& raw);

struct ClassifyResult {
  std::vector<RawPrediction> raw;
  SmoothedStream smoothed;
};

/// End to end: features -> normalize -> encode -> simulate both neurons at
/// test thresholds -> decide -> smooth. One label per 20 ms hop.
ClassifyResult classify(const AudioClip& clip, const TempotronModel& model,
                        const FeatureConfig& feat_cfg = FeatureConfig{},
                        double dt_sim_ms = kDefaultSimStepMs);

/// Same starting from already-normalized frames.
ClassifyResult classify_frames(const std::vector<FeatureFrame>& frames,
                               const TempotronModel& model,
                               double dt_sim_ms = kDefaultSimStepMs);

// Prediction file: CSV with header
// frame_index,time_ms,raw_label,smoothed_label,v_first_spike,n_first_spike,v_max,n_max
// Absent spike times are empty fields.
void write_predictions(const std::string& path, const ClassifyResult& result,
                       double hop_ms = 20.0);

}  // namespace tempovad
