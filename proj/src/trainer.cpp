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

#include "tempovad/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tempovad/rng.hpp"

namespace tempovad {

void TrainConfig::validate() const {
  require(lambda0 > 0, "learning rate must be positive");
  require(decay > 0 && decay <= 1, "decay must be in (0, 1]");
  require(groups > 0 && group_size > 0, "groups and group size must be positive");
  require(margin_delta >= 0, "margin must be non-negative");
  require(init_hi >= init_lo, "weight init bounds inverted");
  require(dt_sim_ms > 0, "simulation step must be positive");
}

namespace {

// Shared kernel sum behind both update rules: for each synapse, the kernel
// evaluated from each of its events strictly before `anchor_ms`.
Vector kernel_sum_before(const SpikePattern& pattern, double anchor_ms,
                         const NeuronParams& params, Eigen::Index n_synapses) {
  Vector delta = Vector::Zero(n_synapses);
  for (const auto& e : pattern.events) {
    if (e.time_ms >= anchor_ms) continue;
    require(e.neuron_id >= 0 && e.neuron_id < n_synapses,
            "event neuron_id outside the weight vector");
    delta[e.neuron_id] += kernel(anchor_ms - e.time_ms, params);
  }
  return delta;
}

}  // namespace

Vector ltp_delta(const SpikePattern& pattern, const NeuronTrace& trace,
                 double lambda, const NeuronParams& params,
                 Eigen::Index n_synapses) {
  return lambda * kernel_sum_before(pattern, trace.t_max_ms, params, n_synapses);
}

Vector ltd_delta(const SpikePattern& pattern, const NeuronTrace& trace,
                 double lambda, const NeuronParams& params,
                 Eigen::Index n_synapses) {
  require(trace.first_spike_ms.has_value(),
          "depression needs a spiking trace");
  return -lambda * kernel_sum_before(pattern, *trace.first_spike_ms, params,
                                     n_synapses);
}

void apply_update(SynapseVector& weights, VectorRef delta) {
  weights.weights = (weights.weights + delta)
                        .cwiseMax(weights.w_min)
                        .cwiseMin(weights.w_max);
}

StepOutcome train_step_pattern(SynapseVector& target, SynapseVector& other,
                               const SpikePattern& pattern, double lambda,
                               const TrainConfig& cfg,
                               const NeuronParams& params) {
  const NeuronTrace trace_t =
      simulate(pattern, target, params, +cfg.margin_delta, cfg.dt_sim_ms);
  const NeuronTrace trace_o =
      simulate(pattern, other, params, -cfg.margin_delta, cfg.dt_sim_ms);

  StepOutcome outcome;
  outcome.target_missed = !trace_t.crossed_threshold;
  outcome.other_false_alarm = trace_o.crossed_threshold;

  // Both deltas come from pre-update weights (the two vectors are disjoint,
  // so the order of application cannot matter either).
  Vector delta_t = Vector::Zero(target.weights.size());
  if (outcome.target_missed) {
    delta_t = ltp_delta(pattern, trace_t, lambda, params, target.weights.size());
  } else if (cfg.update_on_correct) {
    // Literal correct-classification mode: the neuron that fired as desired
    // is potentiated, anchored at its maximum (= its spike time).
    delta_t = ltp_delta(pattern, trace_t, lambda, params, target.weights.size());
  }
  Vector delta_o = Vector::Zero(other.weights.size());
  if (outcome.other_false_alarm) {
    delta_o = ltd_delta(pattern, trace_o, lambda, params, other.weights.size());
  }

  apply_update(target, delta_t);
  apply_update(other, delta_o);
  return outcome;
}

StepOutcome train_step(TempotronModel& model, const FeatureFrame& frame,
                       double lambda, const TrainConfig& cfg) {
  require(frame.label != Label::Unlabeled,
          "cannot train on an unlabeled frame");
  const SpikePattern pattern = encode_frame(frame, model.encoder);
  if (frame.label == Label::Voice) {
    return train_step_pattern(model.weights_v, model.weights_n, pattern, lambda,
                              cfg, model.neuron);
  }
  return train_step_pattern(model.weights_n, model.weights_v, pattern, lambda,
                            cfg, model.neuron);
}

TrainResult train(const std::vector<FeatureFrame>& pool,
                  const TrainConfig& cfg, const NeuronParams& params,
                  const EncoderConfig& encoder, const NormStats& norm) {
  cfg.validate();
  params.validate();
  encoder.validate();
  require(!pool.empty(), "training pool is empty");
  bool has_voice = false, has_novoice = false;
  for (const auto& f : pool) {
    if (f.label == Label::Voice) has_voice = true;
    if (f.label == Label::NoVoice) has_novoice = true;
    require(f.label != Label::Unlabeled, "training pool has unlabeled frames");
  }
  require(has_voice && has_novoice,
          "training pool must contain both classes");

  const Eigen::Index n_synapses =
      static_cast<Eigen::Index>(pool[0].values.size()) * encoder.n_in;

  Rng rng(cfg.seed);
  TrainResult result;
  result.model.neuron = params;
  result.model.encoder = encoder;
  result.model.norm = norm;
  result.model.weights_v.weights = Vector(n_synapses);
  result.model.weights_n.weights = Vector(n_synapses);
  for (Eigen::Index i = 0; i < n_synapses; ++i) {
    result.model.weights_v.weights[i] = rng.uniform(cfg.init_lo, cfg.init_hi);
  }
  for (Eigen::Index i = 0; i < n_synapses; ++i) {
    result.model.weights_n.weights[i] = rng.uniform(cfg.init_lo, cfg.init_hi);
  }

  // Patterns are deterministic per frame, so encode the pool once.
  std::vector<SpikePattern> patterns;
  patterns.reserve(pool.size());
  for (const auto& f : pool) patterns.push_back(encode_frame(f, encoder));

  double lambda = cfg.lambda0;
  for (int g = 0; g < cfg.groups; ++g) {
    GroupStat stat;
    stat.group = g;
    stat.lambda = lambda;
    stat.samples = cfg.group_size;
    for (int s = 0; s < cfg.group_size; ++s) {
      const std::size_t i = rng.index(pool.size());
      const bool voiced = pool[i].label == Label::Voice;
      SynapseVector& target =
          voiced ? result.model.weights_v : result.model.weights_n;
      SynapseVector& other =
          voiced ? result.model.weights_n : result.model.weights_v;
      const StepOutcome outcome =
          train_step_pattern(target, other, patterns[i], lambda, cfg, params);
      if (outcome.error()) ++stat.errors;
    }
    result.log.push_back(stat);
    lambda *= cfg.decay;
    log_debug("group " + std::to_string(g) + ": error rate " +
              std::to_string(static_cast<double>(stat.errors) / stat.samples));
  }
  return result;
}

namespace {

void write_weight_section(std::ofstream& out, const char* name,
                          const SynapseVector& w) {
  out << name << ":\n";
  char buf[40];
  for (Eigen::Index i = 0; i < w.weights.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", w.weights[i]);
    out << buf << '\n';
  }
}

double parse_kv(const std::string& line, const std::string& path) {
  const auto eq = line.find('=');
  require(eq != std::string::npos, path + ": expected key=value, got '" + line + "'");
  return std::stod(line.substr(eq + 1));
}

}  // namespace

void write_model(const std::string& path, const TempotronModel& model) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  char buf[96];
  out << "TVMDL v1\n";
  auto kv = [&](const char* key, double value) {
    std::snprintf(buf, sizeof(buf), "%s=%.17g\n", key, value);
    out << buf;
  };
  kv("neuron.v_rest", model.neuron.v_rest);
  kv("neuron.v_thr", model.neuron.v_thr);
  kv("neuron.tau_ms", model.neuron.tau_ms);
  kv("neuron.tau_s_ms", model.neuron.tau_s_ms);
  kv("neuron.v0", model.neuron.effective_v0());
  kv("neuron.v_min", model.neuron.v_min);
  kv("encoder.n_in", model.encoder.n_in);
  kv("encoder.t_interval_ms", model.encoder.t_interval_ms);
  kv("encoder.offset_ms", model.encoder.offset_ms);
  kv("encoder.jitter_divisor", model.encoder.jitter_divisor);
  kv("encoder.duration_ms", model.encoder.duration_ms);
  kv("norm.global_min", model.norm.global_min);
  kv("norm.global_max", model.norm.global_max);
  kv("weights.w_min", model.weights_v.w_min);
  kv("weights.w_max", model.weights_v.w_max);
  kv("weights.count", static_cast<double>(model.weights_v.weights.size()));
  write_weight_section(out, "V", model.weights_v);
  write_weight_section(out, "N", model.weights_n);
  require(out.good(), "write failed for " + path);
}

TempotronModel read_model(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open model file " + path);
  std::string line;
  std::getline(in, line);
  require(line == "TVMDL v1", path + ": bad model header '" + line + "'");

  TempotronModel model;
  Eigen::Index n_weights = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "V:") break;
    const auto eq = line.find('=');
    require(eq != std::string::npos, path + ": expected key=value before weights");
    const std::string key = line.substr(0, eq);
    const double value = parse_kv(line, path);
    if (key == "neuron.v_rest") model.neuron.v_rest = value;
    else if (key == "neuron.v_thr") model.neuron.v_thr = value;
    else if (key == "neuron.tau_ms") model.neuron.tau_ms = value;
    else if (key == "neuron.tau_s_ms") model.neuron.tau_s_ms = value;
    else if (key == "neuron.v0") model.neuron.v0 = value;
    else if (key == "neuron.v_min") model.neuron.v_min = value;
    else if (key == "encoder.n_in") model.encoder.n_in = static_cast<int>(value);
    else if (key == "encoder.t_interval_ms") model.encoder.t_interval_ms = value;
    else if (key == "encoder.offset_ms") model.encoder.offset_ms = value;
    else if (key == "encoder.jitter_divisor") model.encoder.jitter_divisor = value;
    else if (key == "encoder.duration_ms") model.encoder.duration_ms = value;
    else if (key == "norm.global_min") model.norm.global_min = value;
    else if (key == "norm.global_max") model.norm.global_max = value;
    else if (key == "weights.w_min") {
      model.weights_v.w_min = model.weights_n.w_min = value;
    } else if (key == "weights.w_max") {
      model.weights_v.w_max = model.weights_n.w_max = value;
    } else if (key == "weights.count") {
      n_weights = static_cast<Eigen::Index>(value);
    } else {
      throw std::invalid_argument(path + ": unknown model key '" + key + "'");
    }
  }
  require(line == "V:", path + ": missing V weight section");
  require(n_weights > 0, path + ": missing weights.count");

  auto read_weights = [&](SynapseVector& w) {
    w.weights = Vector(n_weights);
    for (Eigen::Index i = 0; i < n_weights; ++i) {
      require(static_cast<bool>(std::getline(in, line)),
              path + ": truncated weight section");
      w.weights[i] = std::stod(line);
    }
  };
  read_weights(model.weights_v);
  std::getline(in, line);
  require(line == "N:", path + ": missing N weight section");
  read_weights(model.weights_n);
  model.neuron.validate();
  model.encoder.validate();
  return model;
}

void write_group_log(const std::string& path,
                     const std::vector<GroupStat>& log) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << "group,lambda,errors,samples,error_rate\n";
  char buf[96];
  for (const auto& g : log) {
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%d,%d,%.10g\n", g.group,
                  g.lambda, g.errors, g.samples,
                  static_cast<double>(g.errors) / g.samples);
    out << buf;
  }
}

}  // namespace tempovad
