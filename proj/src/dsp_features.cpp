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

#include "tempovad/dsp_features.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tempovad {

void FeatureConfig::validate() const {
  require(n_mels > 0, "n_mels must be positive");
  require(frame_len_ms > 0 && hop_ms > 0, "frame and hop must be positive");
  require(std::abs(hop_ms * 2.0 - frame_len_ms) < 1e-9,
          "hop must be half the frame length (50% overlap)");
  require(fft_size >= frame_samples(), "fft_size must cover the frame");
  require(log_floor > 0, "log floor must be positive");
}

std::size_t frame_count(std::size_t n_samples, const FeatureConfig& cfg,
                        int sample_rate) {
  const std::size_t flen = cfg.frame_samples(sample_rate);
  const std::size_t hop = cfg.hop_samples(sample_rate);
  if (n_samples < flen) return 0;
  return (n_samples - flen) / hop + 1;
}

std::vector<Vector> frame_signal(const AudioClip& clip,
                                 const FeatureConfig& cfg) {
  require(clip.sample_rate == 16000,
          "clip must be 16 kHz (got " + std::to_string(clip.sample_rate) +
              " Hz); resample upstream");
  require(clip.samples.size() > 0, "clip is empty");
  require(clip.samples.allFinite(), "clip contains non-finite samples");
  cfg.validate();

  const int flen = cfg.frame_samples(clip.sample_rate);
  const int hop = cfg.hop_samples(clip.sample_rate);
  const std::size_t n = frame_count(clip.samples.size(), cfg, clip.sample_rate);

  std::vector<Vector> frames;
  frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    frames.push_back(clip.samples.segment(i * hop, flen));
  }
  return frames;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FeatureExtractor::FeatureExtractor(const FeatureConfig& cfg, int sample_rate)
    : cfg_(cfg), sample_rate_(sample_rate) {
  cfg_.validate();
  const int flen = cfg_.frame_samples(sample_rate_);

  window_ = Vector(flen);
  for (int i = 0; i < flen; ++i) {
    const double phase = 2.0 * M_PI * i / flen;  // periodic window
    window_[i] = cfg_.window == WindowKind::Hann
                     ? 0.5 - 0.5 * std::cos(phase)
                     : 0.54 - 0.46 * std::cos(phase);
  }

  // Triangular filters with edges equally spaced on the mel scale between
  // 0 Hz and Nyquist.
  const int n_bins = cfg_.fft_size / 2 + 1;
  const double f_max = sample_rate_ / 2.0;
  const int n_mels = cfg_.n_mels;
  std::vector<double> edges_hz(n_mels + 2);
  const double mel_hi = hz_to_mel(f_max);
  for (int i = 0; i < n_mels + 2; ++i) {
    edges_hz[i] = mel_to_hz(mel_hi * i / (n_mels + 1));
  }
  centers_hz_.assign(edges_hz.begin() + 1, edges_hz.end() - 1);

  filterbank_ = Matrix::Zero(n_mels, n_bins);
  for (int m = 0; m < n_mels; ++m) {
    const double f0 = edges_hz[m], f1 = edges_hz[m + 1], f2 = edges_hz[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate_ / cfg_.fft_size;
      const double rise = (f - f0) / (f1 - f0);
      const double fall = (f2 - f) / (f2 - f1);
      filterbank_(m, k) = std::max(0.0, std::min(rise, fall));
    }
  }
}

Vector FeatureExtractor::log_mel(VectorRef frame) const {
  const int flen = cfg_.frame_samples(sample_rate_);
  require(frame.size() == flen, "frame length does not match config");

  Vector padded = Vector::Zero(cfg_.fft_size);
  padded.head(flen) = frame.cwiseProduct(window_);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  std::vector<double> time(padded.data(), padded.data() + padded.size());
  fft.fwd(spectrum, time);

  const int n_bins = cfg_.fft_size / 2 + 1;
  Vector magnitude(n_bins);
  for (int k = 0; k < n_bins; ++k) magnitude[k] = std::abs(spectrum[k]);

  return ((filterbank_ * magnitude).array() + cfg_.log_floor).log().matrix();
}

std::vector<FeatureFrame> FeatureExtractor::extract(
    const AudioClip& clip) const {
  const auto raw = frame_signal(clip, cfg_);
  std::vector<FeatureFrame> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    FeatureFrame f;
    f.values = log_mel(raw[i]);
    f.frame_index = static_cast<int>(i);
    out.push_back(std::move(f));
  }
  return out;
}

NormStats fit_norm(const std::vector<FeatureFrame>& frames) {
  require(!frames.empty(), "cannot fit normalization on an empty feature set");
  double lo = frames[0].values.minCoeff();
  double hi = frames[0].values.maxCoeff();
  for (const auto& f : frames) {
    lo = std::min(lo, f.values.minCoeff());
    hi = std::max(hi, f.values.maxCoeff());
  }
  require(hi > lo,
          "feature set is constant (min == max); normalization undefined");
  return NormStats{lo, hi};
}

FeatureFrame normalize(const FeatureFrame& frame, const NormStats& stats) {
  require(stats.global_max > stats.global_min, "invalid normalization stats");
  FeatureFrame out = frame;
  const double span = stats.global_max - stats.global_min;
  out.values = ((frame.values.array() - stats.global_min) / span)
                   .cwiseMax(0.0)
                   .cwiseMin(1.0)
                   .matrix();
  return out;
}

void write_features(const std::string& path,
                    const std::vector<FeatureFrame>& frames, int n_mels) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << "TVFEAT v1 n_mels=" << n_mels << "\n";
  char buf[32];
  for (const auto& f : frames) {
    require(f.values.size() == n_mels, "frame width does not match n_mels");
    out << f.frame_index << ' ' << label_char(f.label);
    for (Eigen::Index i = 0; i < f.values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.10g", f.values[i]);
      out << ' ' << buf;
    }
    out << '\n';
  }
  require(out.good(), "write failed for " + path);
}

std::vector<FeatureFrame> read_features(const std::string& path,
                                        int expected_n_mels) {
  std::ifstream in(path);
  require(in.good(), "cannot open feature file " + path);
  std::string header;
  std::getline(in, header);
  int n_mels = 0;
  if (std::sscanf(header.c_str(), "TVFEAT v1 n_mels=%d", &n_mels) != 1) {
    throw std::invalid_argument(path + ": bad feature header '" + header + "'");
  }
  if (expected_n_mels > 0) {
    require(n_mels == expected_n_mels,
            path + ": n_mels=" + std::to_string(n_mels) + ", expected " +
                std::to_string(expected_n_mels));
  }
  std::vector<FeatureFrame> frames;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    FeatureFrame f;
    std::string label;
    require(static_cast<bool>(ls >> f.frame_index >> label) && label.size() == 1,
            path + ": malformed feature line '" + line + "'");
    f.label = label_from_char(label[0]);
    f.values = Vector(n_mels);
    for (int i = 0; i < n_mels; ++i) {
      require(static_cast<bool>(ls >> f.values[i]),
              path + ": feature line has fewer than " +
                  std::to_string(n_mels) + " values");
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

void write_norm_stats(const std::string& path, const NormStats& stats) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "norm.global_min=%.17g\n", stats.global_min);
  out << buf;
  std::snprintf(buf, sizeof(buf), "norm.global_max=%.17g\n", stats.global_max);
  out << buf;
}

NormStats read_norm_stats(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open norm stats file " + path);
  NormStats stats;
  bool got_min = false, got_max = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "norm.global_min=%lg", &v) == 1) {
      stats.global_min = v;
      got_min = true;
    } else if (std::sscanf(line.c_str(), "norm.global_max=%lg", &v) == 1) {
      stats.global_max = v;
      got_max = true;
    } else {
      throw std::invalid_argument(path + ": unexpected line '" + line + "'");
    }
  }
  require(got_min && got_max, path + ": missing normalization keys");
  require(stats.global_max > stats.global_min,
          path + ": max must exceed min");
  return stats;
}

}  // namespace tempovad
