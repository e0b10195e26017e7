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

#include "tempovad/bin_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tempovad {

void EncoderConfig::validate() const {
  require(n_in >= 2, "encoder needs at least two neurons per band");
  require(t_interval_ms > 0, "t_interval must be positive");
  require(offset_ms >= 0, "offset must be non-negative");
  require(jitter_divisor > 0, "jitter divisor must be positive");
  require(duration_ms > 0, "duration must be positive");
}

namespace {
void check_value(double val) {
  require(std::isfinite(val) && val >= 0.0 && val <= 1.0,
          "encoder input " + std::to_string(val) +
              " outside [0,1]; normalize features first");
}
}  // namespace

int bin_index(double val, const EncoderConfig& cfg) {
  check_value(val);
  const int idx = static_cast<int>(std::floor(val * cfg.n_in));
  return std::min(idx, cfg.n_in - 1);  // top bin is closed at 1.0
}

double spike_time(double val, const EncoderConfig& cfg) {
  const int n = bin_index(val, cfg);
  const double intensity_diff =
      (val * cfg.n_in - n) * cfg.t_interval_ms / cfg.jitter_divisor;
  return (cfg.n_in - 1 - n) * cfg.t_interval_ms + intensity_diff +
         cfg.offset_ms;
}

double decode_value(int neuron_id, double time_ms, const EncoderConfig& cfg) {
  const int n = neuron_id % cfg.n_in;
  const double intensity_diff =
      time_ms - (cfg.n_in - 1 - n) * cfg.t_interval_ms - cfg.offset_ms;
  return (intensity_diff * cfg.jitter_divisor / cfg.t_interval_ms + n) /
         cfg.n_in;
}

SpikePattern encode_frame(const FeatureFrame& frame, const EncoderConfig& cfg) {
  cfg.validate();
  SpikePattern pattern;
  pattern.duration_ms = cfg.duration_ms;
  pattern.events.reserve(frame.values.size());
  for (Eigen::Index band = 0; band < frame.values.size(); ++band) {
    const double v = frame.values[band];
    SpikeEvent e;
    e.neuron_id = static_cast<int>(band) * cfg.n_in + bin_index(v, cfg);
    e.time_ms = spike_time(v, cfg);
    pattern.events.push_back(e);
  }
  std::sort(pattern.events.begin(), pattern.events.end(),
            [](const SpikeEvent& a, const SpikeEvent& b) {
              if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
              return a.neuron_id < b.neuron_id;
            });
  return pattern;
}

void write_pattern(const std::string& path, const SpikePattern& pattern) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", pattern.duration_ms);
  out << "TVSPK v1 n=" << pattern.events.size() << " dur=" << buf << "\n";
  for (const auto& e : pattern.events) {
    std::snprintf(buf, sizeof(buf), "%.6f", e.time_ms);
    out << e.neuron_id << ' ' << buf << '\n';
  }
  require(out.good(), "write failed for " + path);
}

SpikePattern read_pattern(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open spike file " + path);
  std::string header;
  std::getline(in, header);
  std::size_t n = 0;
  double dur = 0.0;
  if (std::sscanf(header.c_str(), "TVSPK v1 n=%zu dur=%lg", &n, &dur) != 2) {
    throw std::invalid_argument(path + ": bad spike header '" + header + "'");
  }
  SpikePattern pattern;
  pattern.duration_ms = dur;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SpikeEvent e;
    std::istringstream ls(line);
    require(static_cast<bool>(ls >> e.neuron_id >> e.time_ms),
            path + ": malformed spike line '" + line + "'");
    pattern.events.push_back(e);
  }
  require(pattern.events.size() == n,
          path + ": header count " + std::to_string(n) + " but " +
              std::to_string(pattern.events.size()) + " events");
  return pattern;
}

}  // namespace tempovad
