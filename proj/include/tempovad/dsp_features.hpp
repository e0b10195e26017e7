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

namespace tempovad {

/// Mono audio, amplitudes nominally in [-1, 1]. Only 16 kHz input is
/// accepted; resampling belongs upstream of this library.
struct AudioClip {
  Vector samples;
  int sample_rate = 16000;

  double duration_ms() const {
    return 1000.0 * static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class WindowKind { Hann, Hamming };

struct FeatureConfig {
  int n_mels = 128;
  double frame_len_ms = 40.0;
  double hop_ms = 20.0;  // 50% overlap
  int fft_size = 1024;
  WindowKind window = WindowKind::Hann;
  double log_floor = 1e-10;

  int frame_samples(int sample_rate = 16000) const {
    return static_cast<int>(frame_len_ms * sample_rate / 1000.0);
  }
  int hop_samples(int sample_rate = 16000) const {
    return static_cast<int>(hop_ms * sample_rate / 1000.0);
  }
  void validate() const;
};

/// One normalized log-mel frame. After `normalize` every value is in [0, 1].
struct FeatureFrame {
  Vector values;
  Label label = Label::Unlabeled;
  int frame_index = 0;
};

/// Global min/max over all bands of all frames of a feature set.
struct NormStats {
  double global_min = 0.0;
  double global_max = 0.0;
};

/// Slice a clip into frames of frame_len at hop spacing; the trailing
/// partial frame is dropped. A clip shorter than one frame yields an empty
/// sequence.
std::vector<Vector> frame_signal(const AudioClip& clip,
                                 const FeatureConfig& cfg);

/// Number of frames produced by frame_signal for n_samples input samples.
std::size_t frame_count(std::size_t n_samples, const FeatureConfig& cfg,
                        int sample_rate = 16000);

// Windowed magnitude spectrum through triangular mel filters, then
// log(x + log_floor). The window and filterbank are precomputed once.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const FeatureConfig& cfg, int sample_rate = 16000);

  /// log-mel of one raw frame (length must equal cfg.frame_samples()).
  Vector log_mel(VectorRef frame) const;

  /// Frames and extracts a whole clip.
  std::vector<FeatureFrame> extract(const AudioClip& clip) const;

  /// Center frequency (Hz) of mel filter m.
  double filter_center_hz(int m) const { return centers_hz_[m]; }

  const FeatureConfig& config() const { return cfg_; }

 private:
  FeatureConfig cfg_;
  int sample_rate_;
  Vector window_;
  Matrix filterbank_;  // n_mels x (fft_size/2 + 1)
  std::vector<double> centers_hz_;
};

/// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Exact min and max over all bands of all frames. Throws if the set is
/// empty or constant (normalization undefined).
NormStats fit_norm(const std::vector<FeatureFrame>& frames);

/// v' = clamp((v - min) / (max - min), 0, 1). Clamping covers test-time
/// values outside the training range.
FeatureFrame normalize(const FeatureFrame& frame, const NormStats& stats);

// Feature file: header `TVFEAT v1 n_mels=<n>`, then one frame per line:
// `frame_index label v0 ... v127`, label in {V,N,U}.
void write_features(const std::string& path,
                    const std::vector<FeatureFrame>& frames, int n_mels);
std::vector<FeatureFrame> read_features(const std::string& path,
                                        int expected_n_mels = -1);

void write_norm_stats(const std::string& path, const NormStats& stats);
NormStats read_norm_stats(const std::string& path);

}  // namespace tempovad
