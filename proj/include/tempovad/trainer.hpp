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
#include <vector>

#include "tempovad/bin_encoder.hpp"
#include "tempovad/dsp_features.hpp"
#include "tempovad/snn_core.hpp"

namespace tempovad {

struct TrainConfig {
  double lambda0 = 0.8;
  double decay = 0.95;  // per-group multiplier
  int groups = 120;
  int group_size = 200;
  double margin_delta = 0.5;
  double init_lo = 0.0;
  double init_hi = 0.05;
  std::uint64_t seed = 0;
  // When true, a correct classification also potentiates the neuron that
  // fired (update anchored at its spike time); the silent neuron is left
  // unchanged. Off by default: only misses and false alarms update.
  bool update_on_correct = false;
  double dt_sim_ms = kDefaultSimStepMs;

  void validate() const;
};

/// Two output units, V (voice) and N (no voice), plus everything needed to
/// classify raw audio: neuron constants, encoder layout and the feature
/// normalization fitted on the training split.
struct TempotronModel {
  SynapseVector weights_v;
  SynapseVector weights_n;
  NeuronParams neuron;
  EncoderConfig encoder;
  NormStats norm;
};

/// Per-group training log: fraction of presentations that triggered an
/// update (miss or false alarm under the margin-shifted thresholds).
struct GroupStat {
  int group = 0;
  double lambda = 0.0;
  int errors = 0;
  int samples = 0;
};

struct TrainResult {
  TempotronModel model;
  std::vector<GroupStat> log;
};

/// Potentiation for a missed pattern: for each synapse, lambda * sum of
/// kernel(t_max - t_j) over that synapse's events with t_j strictly before
/// the trace's voltage maximum. Zero elsewhere.
Vector ltp_delta(const SpikePattern& pattern, const NeuronTrace& trace,
                 double lambda, const NeuronParams& params,
                 Eigen::Index n_synapses);

/// Depression for a false alarm: mirror of ltp_delta anchored at the spike
/// time, negated.
Vector ltd_delta(const SpikePattern& pattern, const NeuronTrace& trace,
                 double lambda, const NeuronParams& params,
                 Eigen::Index n_synapses);

/// w <- clamp(w + delta, w_min, w_max) elementwise.
void apply_update(SynapseVector& weights, VectorRef delta);

/// Outcome of one presentation (the trainer's own error signal).
struct StepOutcome {
  bool target_missed = false;
  bool other_false_alarm = false;
  bool error() const { return target_missed || other_false_alarm; }
};

/// One presentation against both neurons. The target neuron simulates with
/// threshold shifted +margin_delta, the other with -margin_delta; each is
/// updated independently from its own pre-update weights.
StepOutcome train_step_pattern(SynapseVector& target, SynapseVector& other,
                               const SpikePattern& pattern, double lambda,
                               const TrainConfig& cfg,
                               const NeuronParams& params);

/// encode + train_step_pattern on a labeled frame; Unlabeled frames are
/// rejected.
StepOutcome train_step(TempotronModel& model, const FeatureFrame& frame,
                       double lambda, const TrainConfig& cfg);

/// Full schedule: weights initialized from U(init_lo, init_hi) with the
/// config seed, presentations drawn with replacement from the pool and
/// arranged into `groups` groups of `group_size`, lambda multiplied by
/// `decay` after each group. The pool must contain both classes; frames
/// must already be normalized.
TrainResult train(const std::vector<FeatureFrame>& pool,
                  const TrainConfig& cfg, const NeuronParams& params,
                  const EncoderConfig& encoder, const NormStats& norm);

// Model file: header `TVMDL v1`, key=value lines for the neuron, encoder
// and normalization parameters, then `V:` and `N:` sections with one
// weight per line.
void write_model(const std::string& path, const TempotronModel& model);
TempotronModel read_model(const std::string& path);

void write_group_log(const std::string& path,
                     const std::vector<GroupStat>& log);

}  // namespace tempovad
