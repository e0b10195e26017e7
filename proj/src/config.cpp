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

#include "tempovad/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tempovad {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == value.size() && !value.empty(),
          key + ": expected a number, got '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  require(v == static_cast<int>(v), key + ": expected an integer, got '" +
                                        value + "'");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == value.size() && !value.empty(),
          key + ": expected an unsigned integer, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + value +
                              "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  auto d = [&] { return parse_double(key, value); };
  auto i = [&] { return parse_int(key, value); };

  if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "feature.n_mels") {
    feature.n_mels = i();
  } else if (key == "feature.frame_len_ms") {
    feature.frame_len_ms = d();
  } else if (key == "feature.hop_ms") {
    feature.hop_ms = d();
  } else if (key == "feature.fft_size") {
    feature.fft_size = i();
  } else if (key == "feature.window") {
    if (value == "hann") {
      feature.window = WindowKind::Hann;
    } else if (value == "hamming") {
      feature.window = WindowKind::Hamming;
    } else {
      throw std::invalid_argument(key + ": expected hann or hamming, got '" +
                                  value + "'");
    }
  } else if (key == "feature.log_floor") {
    feature.log_floor = d();
  } else if (key == "encoder.n_in") {
    encoder.n_in = i();
  } else if (key == "encoder.t_interval_ms") {
    encoder.t_interval_ms = d();
  } else if (key == "encoder.offset_ms") {
    encoder.offset_ms = d();
  } else if (key == "encoder.jitter_divisor") {
    encoder.jitter_divisor = d();
  } else if (key == "encoder.duration_ms") {
    encoder.duration_ms = d();
  } else if (key == "neuron.v_rest") {
    neuron.v_rest = d();
  } else if (key == "neuron.v_thr") {
    neuron.v_thr = d();
  } else if (key == "neuron.tau_ms") {
    neuron.tau_ms = d();
  } else if (key == "neuron.tau_s_ms") {
    neuron.tau_s_ms = d();
  } else if (key == "neuron.v0") {
    neuron.v0 = d();
  } else if (key == "neuron.v_min") {
    neuron.v_min = d();
  } else if (key == "train.lambda0") {
    train.lambda0 = d();
  } else if (key == "train.decay") {
    train.decay = d();
  } else if (key == "train.groups") {
    train.groups = i();
  } else if (key == "train.group_size") {
    train.group_size = i();
  } else if (key == "train.margin_delta") {
    train.margin_delta = d();
  } else if (key == "train.init_lo") {
    train.init_lo = d();
  } else if (key == "train.init_hi") {
    train.init_hi = d();
  } else if (key == "train.update_on_correct") {
    train.update_on_correct = parse_bool(key, value);
  } else if (key == "train.dt_sim_ms") {
    train.dt_sim_ms = d();
  } else if (key == "energy.e_sop_j") {
    energy.e_sop_j = d();
  } else if (key == "energy.e_update_active_j") {
    energy.e_update_active_j = d();
  } else if (key == "energy.e_update_inactive_j") {
    energy.e_update_inactive_j = d();
  } else if (key == "energy.sop_rule") {
    if (value == "per_output_event") {
      sop_rule = SopRule::PerOutputEvent;
    } else if (value == "input_fan_out") {
      sop_rule = SopRule::InputFanOut;
    } else {
      throw std::invalid_argument(
          key + ": expected per_output_event or input_fan_out, got '" + value +
          "'");
    }
  } else if (key == "synth.duration_s") {
    synth.duration_s = d();
  } else if (key == "synth.snr_db") {
    synth.snr_db = d();
  } else if (key == "synth.speech_duty") {
    synth.speech_duty = d();
  } else if (key == "synth.noise") {
    if (value == "white") {
      synth.noise_kind = NoiseKind::White;
    } else if (value == "pink") {
      synth.noise_kind = NoiseKind::Pink;
    } else if (value == "babble") {
      synth.noise_kind = NoiseKind::Babble;
    } else {
      throw std::invalid_argument(key +
                                  ": expected white, pink or babble, got '" +
                                  value + "'");
    }
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value, got '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    try {
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
}

std::string RunConfig::dump() const {
  std::ostringstream out;
  out << "seed=" << seed << '\n'
      << "feature.n_mels=" << feature.n_mels << '\n'
      << "feature.frame_len_ms=" << fmt(feature.frame_len_ms) << '\n'
      << "feature.hop_ms=" << fmt(feature.hop_ms) << '\n'
      << "feature.fft_size=" << feature.fft_size << '\n'
      << "feature.window="
      << (feature.window == WindowKind::Hann ? "hann" : "hamming") << '\n'
      << "feature.log_floor=" << fmt(feature.log_floor) << '\n'
      << "encoder.n_in=" << encoder.n_in << '\n'
      << "encoder.t_interval_ms=" << fmt(encoder.t_interval_ms) << '\n'
      << "encoder.offset_ms=" << fmt(encoder.offset_ms) << '\n'
      << "encoder.jitter_divisor=" << fmt(encoder.jitter_divisor) << '\n'
      << "encoder.duration_ms=" << fmt(encoder.duration_ms) << '\n'
      << "neuron.v_rest=" << fmt(neuron.v_rest) << '\n'
      << "neuron.v_thr=" << fmt(neuron.v_thr) << '\n'
      << "neuron.tau_ms=" << fmt(neuron.tau_ms) << '\n'
      << "neuron.tau_s_ms=" << fmt(neuron.tau_s_ms) << '\n'
      << "neuron.v0=" << fmt(neuron.v0) << '\n'
      << "neuron.v_min=" << fmt(neuron.v_min) << '\n'
      << "train.lambda0=" << fmt(train.lambda0) << '\n'
      << "train.decay=" << fmt(train.decay) << '\n'
      << "train.groups=" << train.groups << '\n'
      << "train.group_size=" << train.group_size << '\n'
      << "train.margin_delta=" << fmt(train.margin_delta) << '\n'
      << "train.init_lo=" << fmt(train.init_lo) << '\n'
      << "train.init_hi=" << fmt(train.init_hi) << '\n'
      << "train.update_on_correct="
      << (train.update_on_correct ? "true" : "false") << '\n'
      << "train.dt_sim_ms=" << fmt(train.dt_sim_ms) << '\n'
      << "energy.e_sop_j=" << fmt(energy.e_sop_j) << '\n'
      << "energy.e_update_active_j=" << fmt(energy.e_update_active_j) << '\n'
      << "energy.e_update_inactive_j=" << fmt(energy.e_update_inactive_j)
      << '\n'
      << "energy.sop_rule="
      << (sop_rule == SopRule::PerOutputEvent ? "per_output_event"
                                              : "input_fan_out")
      << '\n'
      << "synth.duration_s=" << fmt(synth.duration_s) << '\n'
      << "synth.snr_db=" << fmt(synth.snr_db) << '\n'
      << "synth.speech_duty=" << fmt(synth.speech_duty) << '\n'
      << "synth.noise="
      << (synth.noise_kind == NoiseKind::White
              ? "white"
              : (synth.noise_kind == NoiseKind::Pink ? "pink" : "babble"))
      << '\n';
  return out.str();
}

}  // namespace tempovad
