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

#include "tempovad/data_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tempovad/rng.hpp"

namespace tempovad {

void SynthConfig::validate() const {
  require(duration_s > 0, "duration must be positive");
  require(std::isfinite(snr_db), "snr must be finite");
  require(speech_duty >= 0 && speech_duty < 1,
          "speech duty must be in [0, 1)");
}

namespace {

constexpr int kSampleRate = 16000;
constexpr double kHopS = 0.02;  // label grid

double snap_to_hop(double seconds) {
  return std::max(1.0, std::round(seconds / kHopS)) * kHopS;
}

// Amplitude-modulated harmonic stack with formant-like band emphasis,
// normalized to unit peak before modulation. Draw order is fixed so the
// clip is a pure function of the seed.
Vector harmonic_burst(Rng& rng, int n_samples) {
  const double f0 = rng.uniform(100.0, 300.0);
  const double drift_phase = rng.uniform(0.0, 2.0 * M_PI);
  const int n_harmonics = static_cast<int>(4000.0 / f0);
  std::vector<double> harm_phase(n_harmonics);
  for (auto& p : harm_phase) p = rng.uniform(0.0, 2.0 * M_PI);
  const double am_rate = rng.uniform(2.5, 5.0);
  const double am_phase = rng.uniform(0.0, 2.0 * M_PI);

  auto formant_gain = [](double f) {
    auto peak = [&](double c, double w) {
      const double d = (f - c) / w;
      return std::exp(-d * d);
    };
    return 0.3 + peak(500, 200) + 0.8 * peak(1500, 300) + 0.5 * peak(2500, 400);
  };

  Vector out = Vector::Zero(n_samples);
  double phase = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / kSampleRate;
    const double f0_t =
        f0 * (1.0 + 0.02 * std::sin(2.0 * M_PI * 0.8 * t + drift_phase));
    phase += 2.0 * M_PI * f0_t / kSampleRate;
    double s = 0.0;
    for (int h = 1; h <= n_harmonics; ++h) {
      s += formant_gain(h * f0) / h * std::sin(h * phase + harm_phase[h - 1]);
    }
    out[i] = s;
  }
  const double peak = out.cwiseAbs().maxCoeff();
  if (peak > 0) out /= peak;

  for (int i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / kSampleRate;
    const double am =
        0.75 + 0.25 * std::sin(2.0 * M_PI * am_rate * t + am_phase);
    const double t_end = static_cast<double>(n_samples - 1 - i) / kSampleRate;
    const double ramp = std::min(1.0, std::min(t, t_end) / 0.02);
    out[i] *= am * ramp;
  }
  return out;
}

Vector make_noise(Rng& rng, int n_samples, NoiseKind kind, double duration_s) {
  Vector noise(n_samples);
  switch (kind) {
    case NoiseKind::White:
      for (int i = 0; i < n_samples; ++i) noise[i] = rng.normal();
      break;
    case NoiseKind::Pink: {
      // Kellett's economy pinking filter.
      double b0 = 0, b1 = 0, b2 = 0;
      for (int i = 0; i < n_samples; ++i) {
        const double w = rng.normal();
        b0 = 0.99765 * b0 + w * 0.0990460;
        b1 = 0.96300 * b1 + w * 0.2965164;
        b2 = 0.57000 * b2 + w * 1.0526913;
        noise[i] = b0 + b1 + b2 + w * 0.1848;
      }
      break;
    }
    case NoiseKind::Babble: {
      // Several overlapping talkers, each a gapless chain of bursts.
      noise.setZero();
      const int n_talkers = 8;
      for (int talker = 0; talker < n_talkers; ++talker) {
        int pos = 0;
        while (pos < n_samples) {
          const double burst_s = rng.uniform(0.15, 0.45);
          const int len = std::min(
              n_samples - pos, static_cast<int>(burst_s * kSampleRate));
          noise.segment(pos, len) += harmonic_burst(rng, len);
          pos += len;
        }
      }
      // A small broadband floor so the mixture is never purely harmonic.
      for (int i = 0; i < n_samples; ++i) noise[i] += 0.05 * rng.normal();
      break;
    }
  }
  (void)duration_s;
  return noise;
}

}  // namespace

SynthResult synth(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n_samples = static_cast<int>(cfg.duration_s * kSampleRate);
  const double duration_ms = 1000.0 * n_samples / kSampleRate;

  // Alternating noise/voice spans snapped to the 20 ms label grid. The
  // clip starts unvoiced so onsets are never clipped.
  std::vector<LabeledSegment> segments;
  if (cfg.speech_duty == 0.0) {
    segments.push_back({0.0, duration_ms, Label::NoVoice});
  } else {
    double t = 0.0;
    bool voiced = false;
    while (t * 1000.0 < duration_ms - 1e-9) {
      double len_s;
      if (voiced) {
        len_s = rng.uniform(0.3, 0.9);
      } else {
        len_s = rng.uniform(0.3, 0.9) * (1.0 - cfg.speech_duty) /
                cfg.speech_duty * rng.uniform(0.7, 1.3);
      }
      len_s = snap_to_hop(len_s);
      const double end_ms = std::min((t + len_s) * 1000.0, duration_ms);
      segments.push_back({t * 1000.0, end_ms,
                          voiced ? Label::Voice : Label::NoVoice});
      t = end_ms / 1000.0;
      voiced = !voiced;
    }
  }

  Vector speech = Vector::Zero(n_samples);
  for (const auto& seg : segments) {
    if (seg.label != Label::Voice) continue;
    const int i0 = static_cast<int>(std::round(seg.start_ms / 1000.0 * kSampleRate));
    const int i1 = static_cast<int>(std::round(seg.end_ms / 1000.0 * kSampleRate));
    speech.segment(i0, i1 - i0) = harmonic_burst(rng, i1 - i0);
  }

  Vector noise = make_noise(rng, n_samples, cfg.noise_kind, cfg.duration_s);

  // Unvoiced spans carry their own noise level so the no-speech class
  // covers the full dynamic range a recorder sees: most spans sit near the
  // canonical level, some are markedly quieter, and some drop to exact
  // digital silence the way recordings pause between takes. Every clip
  // opens on such a pause (the lead-in before the scene starts), so the
  // no-speech class always includes true silence. Voiced spans keep the
  // canonical level that the SNR contract is measured against; levels
  // ramp over 20 ms at voiced boundaries.
  const int ramp_samples = kSampleRate / 50;
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const auto& seg = segments[si];
    if (seg.label == Label::Voice) continue;
    const double kind = rng.uniform();
    const double level = rng.uniform();
    double g;
    if (si == 0 && segments.size() > 1) {
      g = 0.0;  // recording lead-in pause
    } else if (kind < 0.15 && segments.size() > 1) {
      g = 0.0;  // pause between takes
    } else if (kind < 0.30) {
      g = std::exp(std::log(0.01) + level * (std::log(0.1) - std::log(0.01)));
    } else if (kind < 0.65) {
      g = 1.0;  // canonical level
    } else {
      g = std::exp(std::log(0.3) + level * (0.0 - std::log(0.3)));
    }
    const int i0 =
        static_cast<int>(std::round(seg.start_ms / 1000.0 * kSampleRate));
    const int i1 =
        static_cast<int>(std::round(seg.end_ms / 1000.0 * kSampleRate));
    const int ramp = std::min(ramp_samples, (i1 - i0) / 2);
    const bool ramp_in = si > 0;
    const bool ramp_out = si + 1 < segments.size();
    for (int i = i0; i < i1; ++i) {
      double w = 1.0;
      if (ramp_in && ramp > 0) {
        w = std::min(w, static_cast<double>(i - i0) / ramp);
      }
      if (ramp_out && ramp > 0) {
        w = std::min(w, static_cast<double>(i1 - 1 - i) / ramp);
      }
      noise[i] *= 1.0 + (g - 1.0) * std::min(1.0, w);
    }
  }

  // Scale noise so the SNR over the voiced samples matches the request.
  double speech_power = 0.0, noise_power = 0.0;
  std::int64_t n_voiced = 0;
  for (const auto& seg : segments) {
    if (seg.label != Label::Voice) continue;
    const int i0 = static_cast<int>(std::round(seg.start_ms / 1000.0 * kSampleRate));
    const int i1 = static_cast<int>(std::round(seg.end_ms / 1000.0 * kSampleRate));
    speech_power += speech.segment(i0, i1 - i0).squaredNorm();
    noise_power += noise.segment(i0, i1 - i0).squaredNorm();
    n_voiced += i1 - i0;
  }
  double gain = 1.0;
  if (n_voiced > 0 && noise_power > 0) {
    gain = std::sqrt(speech_power /
                     (noise_power * std::pow(10.0, cfg.snr_db / 10.0)));
  }
  noise *= gain;

  SynthResult result;
  result.clip.sample_rate = kSampleRate;
  result.clip.samples = speech + noise;
  const double peak = result.clip.samples.cwiseAbs().maxCoeff();
  if (peak > 1.0) {
    // Rescaling both components together preserves the realized SNR.
    const double s = 0.95 / peak;
    result.clip.samples *= s;
    speech *= s;
    noise *= s;
  }
  result.segments = std::move(segments);
  result.speech = std::move(speech);
  result.noise = std::move(noise);
  return result;
}

double measure_snr_db(const SynthResult& result) {
  double sp = 0.0, np = 0.0;
  for (const auto& seg : result.segments) {
    if (seg.label != Label::Voice) continue;
    const int i0 = static_cast<int>(std::round(seg.start_ms / 1000.0 * kSampleRate));
    const int i1 = static_cast<int>(std::round(seg.end_ms / 1000.0 * kSampleRate));
    sp += result.speech.segment(i0, i1 - i0).squaredNorm();
    np += result.noise.segment(i0, i1 - i0).squaredNorm();
  }
  require(sp > 0 && np > 0, "no voiced region to measure SNR over");
  return 10.0 * std::log10(sp / np);
}

// ---------------------------------------------------------------------------
// WAV input/output (16-bit PCM, mono, 16 kHz)

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}
void put_u16(std::ofstream& out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b, 2);
}
std::uint32_t get_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
std::uint16_t get_u16(std::ifstream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

void write_wav(const std::string& path, const AudioClip& clip) {
  require(clip.sample_rate == kSampleRate, "writer only emits 16 kHz WAV");
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open " + path + " for writing");

  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  const std::uint32_t data_bytes = n * 2;
  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, kSampleRate);
  put_u32(out, kSampleRate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double v = std::clamp(clip.samples[i], -1.0, 1.0);
    const auto s = static_cast<std::int16_t>(std::lrint(v * 32767.0));
    put_u16(out, static_cast<std::uint16_t>(s));
  }
  require(out.good(), "write failed for " + path);
}

AudioClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open WAV file " + path);

  char tag[5] = {};
  in.read(tag, 4);
  require(std::strncmp(tag, "RIFF", 4) == 0, path + ": not a RIFF file");
  get_u32(in);
  in.read(tag, 4);
  require(std::strncmp(tag, "WAVE", 4) == 0, path + ": not a WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  AudioClip clip;
  while (in.read(tag, 4)) {
    const std::uint32_t chunk_size = get_u32(in);
    if (std::strncmp(tag, "fmt ", 4) == 0) {
      format = get_u16(in);
      channels = get_u16(in);
      rate = get_u32(in);
      get_u32(in);
      get_u16(in);
      bits = get_u16(in);
      if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::strncmp(tag, "data", 4) == 0) {
      require(have_fmt, path + ": data chunk before fmt chunk");
      require(format == 1, path + ": only uncompressed PCM is supported");
      require(channels == 1, path + ": expected mono, got " +
                                 std::to_string(channels) + " channels");
      require(bits == 16, path + ": expected 16-bit samples, got " +
                              std::to_string(bits));
      require(rate == kSampleRate,
              path + ": sample rate " + std::to_string(rate) +
                  " Hz; resample to 16000 Hz before loading");
      const std::uint32_t n = chunk_size / 2;
      clip.samples = Vector(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        const auto s = static_cast<std::int16_t>(get_u16(in));
        // Mirror of the writer's scale, so decode-encode round-trips are
        // sample-exact.
        clip.samples[i] = s / 32767.0;
      }
      require(in.good(), path + ": truncated data chunk");
      clip.sample_rate = kSampleRate;
      return clip;
    } else {
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
    }
  }
  throw std::invalid_argument(path + ": no data chunk found");
}

// ---------------------------------------------------------------------------
// Label files and per-frame ground truth

std::vector<LabeledSegment> read_labels(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open label file " + path);
  std::vector<LabeledSegment> segments;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    LabeledSegment seg;
    std::string label;
    if (!(ls >> seg.start_ms >> seg.end_ms >> label) || label.size() != 1 ||
        (label[0] != 'V' && label[0] != 'N')) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected 'start_ms end_ms V|N', got '" +
                                  line + "'");
    }
    seg.label = label_from_char(label[0]);
    require(seg.end_ms > seg.start_ms,
            path + ":" + std::to_string(line_no) + ": empty or inverted segment");
    if (!segments.empty()) {
      const double prev_end = segments.back().end_ms;
      if (seg.start_ms < prev_end - 1e-9) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": segment overlaps the previous one");
      }
      if (seg.start_ms > prev_end + 1e-9) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": gap before this segment");
      }
    }
    segments.push_back(seg);
  }
  require(!segments.empty(), path + ": no segments");
  require(segments.front().start_ms <= 1e-9,
          path + ": segments must start at 0 ms");
  return segments;
}

void write_labels(const std::string& path,
                  const std::vector<LabeledSegment>& segments) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  char buf[64];
  for (const auto& seg : segments) {
    std::snprintf(buf, sizeof(buf), "%g %g %c\n", seg.start_ms, seg.end_ms,
                  label_char(seg.label));
    out << buf;
  }
}

LabeledClip load_labeled(const std::string& wav_path,
                         const std::string& label_path) {
  LabeledClip lc;
  lc.clip = read_wav(wav_path);
  lc.segments = read_labels(label_path);
  require(lc.segments.back().end_ms + 1e-6 >= lc.clip.duration_ms(),
          label_path + ": segments end at " +
              std::to_string(lc.segments.back().end_ms) +
              " ms but the clip is " + std::to_string(lc.clip.duration_ms()) +
              " ms; labels must cover the whole clip");
  return lc;
}

std::vector<Label> frame_labels(const std::vector<LabeledSegment>& segments,
                                std::size_t n_frames, double frame_len_ms,
                                double hop_ms) {
  std::vector<Label> labels;
  labels.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const double t0 = i * hop_ms;
    const double t1 = t0 + frame_len_ms;
    double voiced_ms = 0.0;
    for (const auto& seg : segments) {
      if (seg.label != Label::Voice) continue;
      voiced_ms += std::max(0.0, std::min(t1, seg.end_ms) -
                                     std::max(t0, seg.start_ms));
    }
    // Majority overlap; an exact 50/50 split counts as Voice.
    labels.push_back(voiced_ms >= frame_len_ms / 2.0 ? Label::Voice
                                                     : Label::NoVoice);
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Manifest

void write_manifest(const std::string& path,
                    const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << "clip_path,label_path,snr_db,split\n";
  char buf[32];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof(buf), "%g", e.snr_db);
    out << e.clip_path << ',' << e.label_path << ',' << buf << ',' << e.split
        << '\n';
  }
  require(out.good(), "write failed for " + path);
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open manifest " + path);
  std::string line;
  std::getline(in, line);
  require(line == "clip_path,label_path,snr_db,split",
          path + ": bad manifest header '" + line + "'");
  std::vector<ManifestEntry> entries;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    ManifestEntry e;
    std::string snr;
    auto field = [&](std::string& dst) {
      require(static_cast<bool>(std::getline(ls, dst, ',')),
              path + ":" + std::to_string(line_no) + ": short manifest row");
    };
    field(e.clip_path);
    field(e.label_path);
    field(snr);
    std::getline(ls, e.split);
    require(e.split == "train" || e.split == "test",
            path + ":" + std::to_string(line_no) + ": split must be train or test");
    e.snr_db = std::stod(snr);
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace tempovad
