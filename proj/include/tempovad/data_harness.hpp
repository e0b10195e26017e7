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

#include "tempovad/common.hpp"
#include "tempovad/dsp_features.hpp"

namespace tempovad {

enum class NoiseKind { White, Pink, Babble };

/// Seeded synthetic noisy-speech generator. Voiced segments are
/// amplitude-modulated harmonic stacks (100-300 Hz fundamentals with
/// formant-like band emphasis); noise is mixed at the requested SNR
/// measured over the voiced regions. Segment boundaries snap to the 20 ms
/// hop so frame labels are exact.
struct SynthConfig {
  double duration_s = 4.0;
  double snr_db = 15.0;
  double speech_duty = 0.5;  // 0 is allowed as a degenerate all-noise clip
  std::uint64_t seed = 0;
  NoiseKind noise_kind = NoiseKind::White;

  void validate() const;
};

/// Ground-truth span. Segments are non-overlapping, sorted, and cover the
/// clip end to end.
struct LabeledSegment {
  double start_ms = 0.0;
  double end_ms = 0.0;
  Label label = Label::NoVoice;
};

struct SynthResult {
  AudioClip clip;
  std::vector<LabeledSegment> segments;
  // Mixture components, exposed so the realized SNR can be re-measured.
  Vector speech;
  Vector noise;
};

SynthResult synth(const SynthConfig& cfg);

/// SNR in dB of speech vs noise measured over the voiced samples.
double measure_snr_db(const SynthResult& result);

struct LabeledClip {
  AudioClip clip;
  std::vector<LabeledSegment> segments;
};

/// 16 kHz mono 16-bit PCM WAV plus a label file of `start_ms end_ms {V|N}`
/// lines. Overlaps, gaps, coverage holes and non-16 kHz audio are rejected
/// with descriptive errors.
LabeledClip load_labeled(const std::string& wav_path,
                         const std::string& label_path);

AudioClip read_wav(const std::string& path);
void write_wav(const std::string& path, const AudioClip& clip);

std::vector<LabeledSegment> read_labels(const std::string& path);
void write_labels(const std::string& path,
                  const std::vector<LabeledSegment>& segments);

/// Per-frame ground truth by majority time-overlap of the 40 ms frame
/// window; an exact 50/50 split counts as Voice.
std::vector<Label> frame_labels(const std::vector<LabeledSegment>& segments,
                                std::size_t n_frames, double frame_len_ms = 40.0,
                                double hop_ms = 20.0);

/// Dataset manifest row; paths are relative to the manifest file.
struct ManifestEntry {
  std::string clip_path;
  std::string label_path;
  double snr_db = 0.0;
  std::string split;  // "train" or "test"
};

void write_manifest(const std::string& path,
                    const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::string& path);

}  // namespace tempovad
