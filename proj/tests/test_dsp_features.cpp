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

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "tempovad/dsp_features.hpp"
#include "tempovad/rng.hpp"

using namespace tempovad;

namespace {

AudioClip clip_of(Eigen::Index n, double value = 0.0) {
  AudioClip clip;
  clip.samples = Vector::Constant(n, value);
  return clip;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("dsp_features") {

TEST_CASE("frame count: one exact frame") {
  FeatureConfig cfg;
  CHECK(frame_signal(clip_of(640), cfg).size() == 1);
}

TEST_CASE("frame count: one second gives 49 frames") {
  FeatureConfig cfg;
  CHECK(frame_signal(clip_of(16000), cfg).size() == 49);
}

TEST_CASE("frame count: one sample short of a frame gives none") {
  FeatureConfig cfg;
  CHECK(frame_signal(clip_of(639), cfg).size() == 0);
}

TEST_CASE("frame count formula holds for random lengths") {
  FeatureConfig cfg;
  Rng rng(20260823);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = rng.index(40000);
    const std::size_t expected = n < 640 ? 0 : (n - 640) / 320 + 1;
    CHECK(frame_count(n, cfg) == expected);
    if (trial < 20) {  // cross-check the formula against actual slicing
      CHECK(frame_signal(clip_of(static_cast<Eigen::Index>(n)), cfg).size() ==
            expected);
    }
  }
}

TEST_CASE("non-16 kHz and non-finite input are rejected") {
  FeatureConfig cfg;
  AudioClip clip = clip_of(640);
  clip.sample_rate = 44100;
  CHECK_THROWS_AS(frame_signal(clip, cfg), std::invalid_argument);
  clip.sample_rate = 16000;
  clip.samples[5] = std::nan("");
  CHECK_THROWS_AS(frame_signal(clip, cfg), std::invalid_argument);
}

TEST_CASE("config invariants: overlap, fft size, log floor") {
  FeatureConfig cfg;
  cfg.hop_ms = 25.0;  // not 50% overlap
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = FeatureConfig{};
  cfg.fft_size = 512;  // smaller than the 640-sample frame
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = FeatureConfig{};
  cfg.log_floor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("log_mel of silence is log of the floor in every band") {
  FeatureConfig cfg;
  FeatureExtractor extractor(cfg);
  const Vector out = extractor.log_mel(Vector::Zero(640));
  REQUIRE(out.size() == 128);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    CHECK(out[i] == doctest::Approx(std::log(cfg.log_floor)).epsilon(1e-12));
  }
}

TEST_CASE("log_mel of a 1 kHz tone peaks in the filter nearest 1 kHz") {
  FeatureConfig cfg;
  FeatureExtractor extractor(cfg);
  Vector frame(640);
  for (int i = 0; i < 640; ++i) {
    frame[i] = std::sin(2.0 * M_PI * 1000.0 * i / 16000.0);
  }
  const Vector out = extractor.log_mel(frame);
  Eigen::Index argmax = 0;
  out.maxCoeff(&argmax);

  int nearest = 0;
  for (int m = 1; m < cfg.n_mels; ++m) {
    if (std::abs(extractor.filter_center_hz(m) - 1000.0) <
        std::abs(extractor.filter_center_hz(nearest) - 1000.0)) {
      nearest = m;
    }
  }
  CHECK(argmax == nearest);
}

TEST_CASE("log_mel of white noise is finite in all bands") {
  FeatureExtractor extractor(FeatureConfig{});
  Rng rng(7);
  Vector frame(640);
  for (int i = 0; i < 640; ++i) frame[i] = rng.uniform(-1.0, 1.0);
  const Vector out = extractor.log_mel(frame);
  for (Eigen::Index i = 0; i < out.size(); ++i) CHECK(std::isfinite(out[i]));
}

TEST_CASE("log_mel is deterministic bit for bit") {
  FeatureExtractor extractor(FeatureConfig{});
  Rng rng(11);
  Vector frame(640);
  for (int i = 0; i < 640; ++i) frame[i] = rng.uniform(-1.0, 1.0);
  const Vector a = extractor.log_mel(frame);
  const Vector b = extractor.log_mel(frame);
  for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("scaling samples up never decreases any band") {
  FeatureExtractor extractor(FeatureConfig{});
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Vector frame(640);
    for (int i = 0; i < 640; ++i) frame[i] = rng.uniform(-0.3, 0.3);
    const double c = rng.uniform(1.0, 8.0);
    const Vector lo = extractor.log_mel(frame);
    const Vector hi = extractor.log_mel(c * frame);
    for (Eigen::Index i = 0; i < lo.size(); ++i) CHECK(hi[i] >= lo[i]);
  }
}

TEST_CASE("fit_norm returns the exact extremes") {
  std::vector<FeatureFrame> frames(2);
  frames[0].values = Vector::Constant(128, 0.2);
  frames[1].values = Vector::Constant(128, 0.7);
  const NormStats stats = fit_norm(frames);
  CHECK(stats.global_min == 0.2);
  CHECK(stats.global_max == 0.7);

  std::vector<FeatureFrame> one(1);
  one[0].values = Vector(3);
  one[0].values << 1.0, 2.0, 3.0;
  const NormStats s1 = fit_norm(one);
  CHECK(s1.global_min == 1.0);
  CHECK(s1.global_max == 3.0);
}

TEST_CASE("fit_norm rejects empty and constant feature sets") {
  CHECK_THROWS_AS(fit_norm({}), std::invalid_argument);
  std::vector<FeatureFrame> frames(2);
  frames[0].values = Vector::Constant(128, 0.5);
  frames[1].values = Vector::Constant(128, 0.5);
  CHECK_THROWS_AS(fit_norm(frames), std::invalid_argument);
}

TEST_CASE("normalize maps min to 0, max to 1, and is linear between") {
  NormStats stats{2.0, 12.0};
  FeatureFrame frame;
  frame.values = Vector(3);
  frame.values << 2.0, 12.0, 2.0 + 0.36 * 10.0;
  const FeatureFrame out = normalize(frame, stats);
  CHECK(out.values[0] == doctest::Approx(0.0));
  CHECK(out.values[1] == doctest::Approx(1.0));
  CHECK(out.values[2] == doctest::Approx(0.36));
}

TEST_CASE("normalize clamps out-of-range values into [0,1]") {
  NormStats stats{-1.0, 1.0};
  Rng rng(17);
  FeatureFrame frame;
  frame.values = Vector(128);
  for (int i = 0; i < 128; ++i) frame.values[i] = rng.uniform(-5.0, 5.0);
  const FeatureFrame out = normalize(frame, stats);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    CHECK(out.values[i] >= 0.0);
    CHECK(out.values[i] <= 1.0);
  }
}

TEST_CASE("feature file round trip preserves frames") {
  Rng rng(19);
  std::vector<FeatureFrame> frames(5);
  for (int i = 0; i < 5; ++i) {
    frames[i].frame_index = i;
    frames[i].label = i % 2 == 0 ? Label::Voice : Label::NoVoice;
    frames[i].values = Vector(128);
    for (int k = 0; k < 128; ++k) frames[i].values[k] = rng.uniform();
  }
  const std::string path = temp_path("tv_feat_roundtrip.tvfeat");
  write_features(path, frames, 128);
  const auto loaded = read_features(path, 128);
  REQUIRE(loaded.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(loaded[i].frame_index == frames[i].frame_index);
    CHECK(loaded[i].label == frames[i].label);
    for (int k = 0; k < 128; ++k) {
      CHECK(loaded[i].values[k] ==
            doctest::Approx(frames[i].values[k]).epsilon(1e-9));
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("feature reader rejects wrong headers and band counts") {
  const std::string path = temp_path("tv_feat_bad.tvfeat");
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("TVFEAT v2 n_mels=128\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_features(path, 128), std::invalid_argument);
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("TVFEAT v1 n_mels=4\n0 V 0.1 0.2 0.3 0.4\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_features(path, 128), std::invalid_argument);
  CHECK(read_features(path, 4).size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("norm stats file round trip is exact") {
  NormStats stats{-3.2833316973813793, 4.4787405311380724};
  const std::string path = temp_path("tv_norm_roundtrip.txt");
  write_norm_stats(path, stats);
  const NormStats loaded = read_norm_stats(path);
  CHECK(loaded.global_min == stats.global_min);
  CHECK(loaded.global_max == stats.global_max);
  std::remove(path.c_str());
}

TEST_CASE("extract attaches frame indices and leaves labels unset") {
  FeatureExtractor extractor(FeatureConfig{});
  Rng rng(23);
  AudioClip clip;
  clip.samples = Vector(16000);
  for (int i = 0; i < 16000; ++i) clip.samples[i] = rng.uniform(-0.5, 0.5);
  const auto frames = extractor.extract(clip);
  REQUIRE(frames.size() == 49);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(frames[i].frame_index == static_cast<int>(i));
    CHECK(frames[i].label == Label::Unlabeled);
    CHECK(frames[i].values.size() == 128);
  }
}

}  // TEST_SUITE
