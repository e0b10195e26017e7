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

#include "tempovad/pipeline.hpp"

#include <cstdio>
#include <fstream>

namespace tempovad {

RawPrediction decide_frame(const NeuronTrace& trace_v,
                           const NeuronTrace& trace_n) {
  RawPrediction p;
  p.v_first_spike_ms = trace_v.first_spike_ms;
  p.n_first_spike_ms = trace_n.first_spike_ms;
  p.v_max = trace_v.v_max;
  p.n_max = trace_n.v_max;

  if (trace_v.crossed_threshold || trace_n.crossed_threshold) {
    p.basis = DecisionBasis::FirstSpike;
    if (trace_v.crossed_threshold && trace_n.crossed_threshold) {
      // Earlier spike wins; an exact tie is conservative NoVoice.
      p.label = *trace_v.first_spike_ms < *trace_n.first_spike_ms
                    ? Label::Voice
                    : Label::NoVoice;
    } else {
      p.label = trace_v.crossed_threshold ? Label::Voice : Label::NoVoice;
    }
  } else {
    p.basis = DecisionBasis::VoltageFallback;
    p.label = trace_v.v_max > trace_n.v_max ? Label::Voice : Label::NoVoice;
  }
  return p;
}

SmoothedStream smooth(const std::vector<RawPrediction>& raw) {
  SmoothedStream out;
  out.labels.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::size_t window = std::min<std::size_t>(i + 1, 5);
    if (window % 2 == 0) --window;  // odd windows only: 1,1,3,3,5,5,...
    int votes_voice = 0;
    for (std::size_t j = i + 1 - window; j <= i; ++j) {
      if (raw[j].label == Label::Voice) ++votes_voice;
    }
    out.labels.push_back(2 * votes_voice > static_cast<int>(window)
                             ? Label::Voice
                             : Label::NoVoice);
  }
  return out;
}

ClassifyResult classify_frames(const std::vector<FeatureFrame>& frames,
                               const TempotronModel& model, double dt_sim_ms) {
  ClassifyResult result;
  result.raw.reserve(frames.size());
  for (const auto& frame : frames) {
    const SpikePattern pattern = encode_frame(frame, model.encoder);
    const NeuronTrace tv =
        simulate(pattern, model.weights_v, model.neuron, 0.0, dt_sim_ms);
    const NeuronTrace tn =
        simulate(pattern, model.weights_n, model.neuron, 0.0, dt_sim_ms);
    result.raw.push_back(decide_frame(tv, tn));
  }
  result.smoothed = smooth(result.raw);
  return result;
}

ClassifyResult classify(const AudioClip& clip, const TempotronModel& model,
                        const FeatureConfig& feat_cfg, double dt_sim_ms) {
  const FeatureExtractor extractor(feat_cfg, clip.sample_rate);
  std::vector<FeatureFrame> frames = extractor.extract(clip);
  for (auto& f : frames) f = normalize(f, model.norm);
  return classify_frames(frames, model, dt_sim_ms);
}

void write_predictions(const std::string& path, const ClassifyResult& result,
                       double hop_ms) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << "frame_index,time_ms,raw_label,smoothed_label,v_first_spike,"
         "n_first_spike,v_max,n_max\n";
  char buf[64];
  auto opt_ms = [&](const std::optional<double>& v) -> std::string {
    if (!v) return "";
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return buf;
  };
  for (std::size_t i = 0; i < result.raw.size(); ++i) {
    const RawPrediction& r = result.raw[i];
    std::snprintf(buf, sizeof(buf), "%zu,%g,", i, i * hop_ms);
    out << buf << label_char(r.label) << ','
        << label_char(result.smoothed.labels[i]) << ','
        << opt_ms(r.v_first_spike_ms) << ',' << opt_ms(r.n_first_spike_ms);
    std::snprintf(buf, sizeof(buf), ",%.10g,%.10g\n", r.v_max, r.n_max);
    out << buf;
  }
  require(out.good(), "write failed for " + path);
}

}  // namespace tempovad
