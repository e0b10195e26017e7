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

// tempovad command-line tool: synthesize labeled audio, extract features,
// encode spikes, train the two-neuron voice-activity detector, evaluate it
// and estimate its neuromorphic energy budget. All stages are seeded and
// write diff-able text artifacts; identical config + seed reproduces every
// artifact byte for byte.

#include <algorithm>
#include <array>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tempovad/config.hpp"
#include "tempovad/data_harness.hpp"
#include "tempovad/energy.hpp"
#include "tempovad/metrics.hpp"
#include "tempovad/pipeline.hpp"
#include "tempovad/rng.hpp"
#include "tempovad/trainer.hpp"

namespace fs = std::filesystem;
using namespace tempovad;

namespace {

// Flags shared across subcommands. Only one subcommand parses per
// invocation, so one instance backs them all.
struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  double snr_db = 15.0;
  int jobs = 1;

  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* snr_opt = nullptr;

  void attach(CLI::App* sub, bool with_out_dir, bool with_snr,
              bool with_jobs) {
    config_opt = sub->add_option("--config", config_path,
                                 "key=value config file; flags override it");
    seed_opt = sub->add_option("--seed", seed, "master random seed");
    if (with_out_dir) {
      sub->add_option("--out-dir", out_dir, "artifact directory")
          ->capture_default_str();
    }
    if (with_snr) {
      snr_opt = sub->add_option("--snr", snr_db,
                                "signal-to-noise ratio in dB over voiced "
                                "regions")
                    ->capture_default_str();
    }
    if (with_jobs) {
      sub->add_option("--jobs", jobs, "worker threads for per-clip stages")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    }
  }

  /// Defaults, then the config file, then explicit flags.
  RunConfig resolve() const {
    RunConfig cfg;
    if (config_opt->count() > 0) cfg.load_file(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (snr_opt != nullptr && snr_opt->count() > 0) cfg.synth.snr_db = snr_db;
    cfg.train.seed = cfg.seed;
    cfg.synth.seed = cfg.seed;
    cfg.feature.validate();
    cfg.encoder.validate();
    cfg.neuron.validate();
    cfg.train.validate();
    cfg.energy.validate();
    cfg.synth.validate();
    return cfg;
  }
};

void emit_resolved(const RunConfig& cfg, const std::string& out_dir) {
  log_info("resolved config:\n" + cfg.dump());
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "resolved_config.txt");
    require(out.good(), "cannot write resolved config under " + out_dir);
    out << cfg.dump();
  }
}

std::string resolve_relative(const std::string& base_file,
                             const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_file).parent_path() / p).string();
}

/// Features with ground-truth frame labels attached.
std::vector<FeatureFrame> labeled_features(const LabeledClip& lc,
                                           const FeatureExtractor& extractor,
                                           const FeatureConfig& feat_cfg) {
  auto frames = extractor.extract(lc.clip);
  const auto labels = frame_labels(lc.segments, frames.size(),
                                   feat_cfg.frame_len_ms, feat_cfg.hop_ms);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].label = labels[i];
  }
  return frames;
}

/// Run fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
/// worker exception. Output ordering is the caller's concern (workers
/// write to disjoint preallocated slots), so parallelism cannot perturb
/// artifacts.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------

int run_synth(const CommonArgs& args, int count, double train_frac,
              double duration_s, double duty, const std::string& noise) {
  RunConfig cfg = args.resolve();
  if (duration_s > 0) cfg.synth.duration_s = duration_s;
  if (duty >= 0) cfg.synth.speech_duty = duty;
  if (!noise.empty()) {
    RunConfig tmp;  // reuse the config parser's name mapping
    tmp.set("synth.noise", noise);
    cfg.synth.noise_kind = tmp.synth.noise_kind;
  }
  require(count > 0, "--count must be positive");
  require(train_frac >= 0 && train_frac <= 1,
          "--train-frac must be in [0, 1]");
  emit_resolved(cfg, args.out_dir);

  Rng master(cfg.seed);
  const int n_train = static_cast<int>(std::lround(count * train_frac));
  std::vector<ManifestEntry> manifest;
  for (int i = 0; i < count; ++i) {
    SynthConfig sc = cfg.synth;
    sc.seed = master.fork();
    const SynthResult result = synth(sc);
    char stem[32];
    std::snprintf(stem, sizeof(stem), "clip_%03d", i);
    const std::string wav_name = std::string(stem) + ".wav";
    const std::string label_name = std::string(stem) + ".labels";
    write_wav((fs::path(args.out_dir) / wav_name).string(), result.clip);
    write_labels((fs::path(args.out_dir) / label_name).string(),
                 result.segments);
    manifest.push_back({wav_name, label_name, cfg.synth.snr_db,
                        i < n_train ? "train" : "test"});
    if (cfg.synth.speech_duty > 0) {
      char msg[96];
      std::snprintf(msg, sizeof(msg), "%s: realized SNR %.2f dB", stem,
                    measure_snr_db(result));
      log_debug(msg);
    }
  }
  const std::string manifest_path =
      (fs::path(args.out_dir) / "manifest.csv").string();
  write_manifest(manifest_path, manifest);
  std::cout << "wrote " << count << " clips and " << manifest_path << "\n";
  return 0;
}

int run_features(const CommonArgs& args, const std::string& in_path,
                 const std::string& label_path, const std::string& out_path,
                 const std::string& fit_norm_path,
                 const std::string& apply_norm_path) {
  RunConfig cfg = args.resolve();
  require(fit_norm_path.empty() || apply_norm_path.empty(),
          "--fit-norm and --apply-norm are mutually exclusive");
  emit_resolved(cfg, "");

  FeatureExtractor extractor(cfg.feature);
  std::vector<FeatureFrame> frames;
  if (!label_path.empty()) {
    frames = labeled_features(load_labeled(in_path, label_path), extractor,
                              cfg.feature);
  } else {
    frames = extractor.extract(read_wav(in_path));
  }

  if (!fit_norm_path.empty()) {
    const NormStats stats = fit_norm(frames);
    write_norm_stats(fit_norm_path, stats);
    for (auto& f : frames) f = normalize(f, stats);
  } else if (!apply_norm_path.empty()) {
    const NormStats stats = read_norm_stats(apply_norm_path);
    for (auto& f : frames) f = normalize(f, stats);
  }
  write_features(out_path, frames, cfg.feature.n_mels);
  std::cout << "wrote " << frames.size() << " frames to " << out_path << "\n";
  return 0;
}

int run_encode(const CommonArgs& args, const std::string& in_path,
               const std::string& out_path, int frame_index) {
  RunConfig cfg = args.resolve();
  emit_resolved(cfg, "");
  const auto frames = read_features(in_path, cfg.feature.n_mels);
  require(frame_index >= 0 &&
              static_cast<std::size_t>(frame_index) < frames.size(),
          "--frame " + std::to_string(frame_index) + " out of range; file has " +
              std::to_string(frames.size()) + " frames");
  const SpikePattern pattern = encode_frame(frames[frame_index], cfg.encoder);
  write_pattern(out_path, pattern);
  std::cout << "wrote " << pattern.events.size() << " spikes to " << out_path
            << "\n";
  return 0;
}

int run_train(const CommonArgs& args, const std::string& manifest_path) {
  RunConfig cfg = args.resolve();
  emit_resolved(cfg, args.out_dir);

  const auto manifest = read_manifest(manifest_path);
  FeatureExtractor extractor(cfg.feature);
  std::vector<std::vector<FeatureFrame>> per_clip;
  std::vector<const ManifestEntry*> train_entries;
  for (const auto& entry : manifest) {
    if (entry.split == "train") train_entries.push_back(&entry);
  }
  require(!train_entries.empty(), manifest_path + ": no train-split clips");
  per_clip.resize(train_entries.size());
  parallel_for(train_entries.size(), args.jobs, [&](std::size_t i) {
    const auto& entry = *train_entries[i];
    const LabeledClip lc =
        load_labeled(resolve_relative(manifest_path, entry.clip_path),
                     resolve_relative(manifest_path, entry.label_path));
    per_clip[i] = labeled_features(lc, extractor, cfg.feature);
  });

  std::vector<FeatureFrame> pool;
  for (auto& frames : per_clip) {
    pool.insert(pool.end(), frames.begin(), frames.end());
  }
  const NormStats norm = fit_norm(pool);
  for (auto& f : pool) f = normalize(f, norm);
  log_info("training pool: " + std::to_string(pool.size()) + " frames from " +
           std::to_string(train_entries.size()) + " clips");

  const TrainResult result =
      train(pool, cfg.train, cfg.neuron, cfg.encoder, norm);
  const std::string model_path =
      (fs::path(args.out_dir) / "model.tvmdl").string();
  const std::string log_path =
      (fs::path(args.out_dir) / "train_log.csv").string();
  write_model(model_path, result.model);
  write_group_log(log_path, result.log);

  const auto& last = result.log.back();
  char msg[128];
  std::snprintf(msg, sizeof(msg),
                "final group error rate %.4f (%d/%d); model at %s",
                static_cast<double>(last.errors) / last.samples, last.errors,
                last.samples, model_path.c_str());
  std::cout << msg << "\n";
  return 0;
}

int run_eval(const CommonArgs& args, const std::string& manifest_path,
             const std::string& model_path, const std::string& split,
             bool dump_predictions) {
  RunConfig cfg = args.resolve();
  emit_resolved(cfg, args.out_dir);
  require(split == "train" || split == "test",
          "--split must be train or test");

  const TempotronModel model = read_model(model_path);
  const auto manifest = read_manifest(manifest_path);
  std::vector<const ManifestEntry*> entries;
  for (const auto& entry : manifest) {
    if (entry.split == split) entries.push_back(&entry);
  }
  require(!entries.empty(),
          manifest_path + ": no clips in split '" + split + "'");

  FeatureExtractor extractor(cfg.feature);
  struct ClipEval {
    ClassifyResult result;
    Metrics metrics;
    std::string name;
  };
  std::vector<ClipEval> evals(entries.size());
  parallel_for(entries.size(), args.jobs, [&](std::size_t i) {
    const auto& entry = *entries[i];
    const LabeledClip lc =
        load_labeled(resolve_relative(manifest_path, entry.clip_path),
                     resolve_relative(manifest_path, entry.label_path));
    auto frames = extractor.extract(lc.clip);
    for (auto& f : frames) f = normalize(f, model.norm);
    ClipEval& ev = evals[i];
    ev.result = classify_frames(frames, model, cfg.train.dt_sim_ms);
    const auto truth = frame_labels(lc.segments, frames.size(),
                                    cfg.feature.frame_len_ms,
                                    cfg.feature.hop_ms);
    ev.metrics = score(ev.result.smoothed.labels, truth);
    ev.name = fs::path(entry.clip_path).filename().string();
  });

  std::vector<ReportRow> rows;
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    rows.push_back(
        {evals[i].name, entries[i]->snr_db, cfg.seed, evals[i].metrics});
    tp += evals[i].metrics.tp;
    tn += evals[i].metrics.tn;
    fp += evals[i].metrics.fp;
    fn += evals[i].metrics.fn;
    if (dump_predictions) {
      const std::string pred_path =
          (fs::path(args.out_dir) /
           ("predictions_" + fs::path(evals[i].name).stem().string() + ".csv"))
              .string();
      write_predictions(pred_path, evals[i].result, cfg.feature.hop_ms);
    }
  }
  const Metrics overall = metrics_from_counts(tp, tn, fp, fn);
  rows.push_back({"overall", entries.front()->snr_db, cfg.seed, overall});
  const std::string report_path =
      (fs::path(args.out_dir) / "report.csv").string();
  write_report(report_path, rows);

  char msg[128];
  std::snprintf(msg, sizeof(msg),
                "overall HTER %.4f (fa %.4f, mr %.4f) over %zu clips; %s",
                overall.hter, overall.fa, overall.mr, entries.size(),
                report_path.c_str());
  std::cout << msg << "\n";
  return 0;
}

int run_classify(const CommonArgs& args, const std::string& in_path,
                 const std::string& model_path, const std::string& out_path) {
  RunConfig cfg = args.resolve();
  emit_resolved(cfg, "");
  const TempotronModel model = read_model(model_path);
  const AudioClip clip = read_wav(in_path);
  const ClassifyResult result =
      classify(clip, model, cfg.feature, cfg.train.dt_sim_ms);
  write_predictions(out_path, result, cfg.feature.hop_ms);
  std::size_t voiced = 0;
  for (const Label l : result.smoothed.labels) {
    if (l == Label::Voice) ++voiced;
  }
  std::cout << voiced << "/" << result.smoothed.labels.size()
            << " frames voiced after smoothing; predictions at " << out_path
            << "\n";
  return 0;
}

int run_energy(const CommonArgs& args, const std::string& spikes_path,
               int output_spikes, double frames_per_s) {
  RunConfig cfg = args.resolve();
  emit_resolved(cfg, "");
  SpikePattern pattern;
  if (!spikes_path.empty()) {
    pattern = read_pattern(spikes_path);
  } else {
    // A representative frame: every band spikes exactly once, which is
    // what the bin code produces for any input.
    FeatureFrame ramp;
    ramp.values = Vector(cfg.feature.n_mels);
    for (int i = 0; i < cfg.feature.n_mels; ++i) {
      ramp.values[i] = static_cast<double>(i) / (cfg.feature.n_mels - 1);
    }
    pattern = encode_frame(ramp, cfg.encoder);
  }
  const Topology topology{cfg.feature.n_mels * cfg.encoder.n_in, 2};
  const EventCounts counts = count_events(pattern, output_spikes, topology,
                                          cfg.sop_rule, frames_per_s);
  std::cout << energy_table(counts, cfg.energy);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tempovad: spiking-network voice activity detection toolkit.\n"
      "Synthesizes labeled audio, extracts log-mel features, encodes them\n"
      "as spike patterns, trains a two-neuron margin tempotron, and reports\n"
      "detection error rates and neuromorphic energy estimates."};
  app.require_subcommand(1);
  int exit_code = 0;

  // One instance per subcommand so each holds its own option handles.
  std::array<CommonArgs, 7> args;

  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a seeded synthetic labeled dataset + manifest");
  int count = 8;
  double train_frac = 0.5, duration_s = -1, duty = -1;
  std::string noise;
  synth_cmd->add_option("--count", count, "number of clips")
      ->capture_default_str();
  synth_cmd->add_option("--train-frac", train_frac,
                        "fraction of clips in the train split")
      ->capture_default_str();
  synth_cmd->add_option("--duration", duration_s, "clip length in seconds");
  synth_cmd->add_option("--duty", duty, "voiced fraction of each clip");
  synth_cmd->add_option("--noise", noise, "noise kind: white, pink, babble");
  args[0].attach(synth_cmd, /*out_dir=*/true, /*snr=*/true, /*jobs=*/false);
  synth_cmd->callback([&] {
    exit_code =
        run_synth(args[0], count, train_frac, duration_s, duty, noise);
  });

  auto* features_cmd = app.add_subcommand(
      "features", "Extract log-mel features from a WAV file");
  std::string in_path, label_path, out_path, fit_norm_path, apply_norm_path;
  features_cmd->add_option("--in", in_path, "input WAV (16 kHz mono PCM16)")
      ->required();
  features_cmd->add_option("--labels", label_path,
                           "label file; attaches per-frame ground truth");
  features_cmd->add_option("--out", out_path, "output feature file")
      ->required();
  features_cmd->add_option("--fit-norm", fit_norm_path,
                           "fit normalization on this clip, save stats here, "
                           "write normalized features");
  features_cmd->add_option("--apply-norm", apply_norm_path,
                           "normalize with previously saved stats");
  args[1].attach(features_cmd, false, false, false);
  features_cmd->callback([&] {
    exit_code = run_features(args[1], in_path, label_path, out_path,
                             fit_norm_path, apply_norm_path);
  });

  auto* encode_cmd = app.add_subcommand(
      "encode", "Encode one normalized feature frame as a spike pattern");
  int frame_index = 0;
  encode_cmd->add_option("--in", in_path, "input feature file")->required();
  encode_cmd->add_option("--out", out_path, "output spike file")->required();
  encode_cmd->add_option("--frame", frame_index, "frame index to encode")
      ->capture_default_str();
  args[2].attach(encode_cmd, false, false, false);
  encode_cmd->callback(
      [&] { exit_code = run_encode(args[2], in_path, out_path, frame_index); });

  auto* train_cmd = app.add_subcommand(
      "train", "Train the V/N neurons on a manifest's train split");
  std::string manifest_path;
  train_cmd->add_option("--manifest", manifest_path, "dataset manifest CSV")
      ->required();
  args[3].attach(train_cmd, true, false, true);
  train_cmd->callback([&] { exit_code = run_train(args[3], manifest_path); });

  auto* eval_cmd = app.add_subcommand(
      "eval", "Classify a manifest split and report error rates");
  std::string model_path, split = "test";
  bool dump_predictions = false;
  eval_cmd->add_option("--manifest", manifest_path, "dataset manifest CSV")
      ->required();
  eval_cmd->add_option("--model", model_path, "trained model file")
      ->required();
  eval_cmd->add_option("--split", split, "manifest split to evaluate")
      ->capture_default_str();
  eval_cmd->add_flag("--dump-predictions", dump_predictions,
                     "also write per-clip prediction CSVs");
  args[4].attach(eval_cmd, true, false, true);
  eval_cmd->callback([&] {
    exit_code =
        run_eval(args[4], manifest_path, model_path, split, dump_predictions);
  });

  auto* classify_cmd = app.add_subcommand(
      "classify", "Label every frame of one WAV with a trained model");
  classify_cmd->add_option("--in", in_path, "input WAV")->required();
  classify_cmd->add_option("--model", model_path, "trained model file")
      ->required();
  classify_cmd->add_option("--out", out_path, "output prediction CSV")
      ->required();
  args[5].attach(classify_cmd, false, false, false);
  classify_cmd->callback([&] {
    exit_code = run_classify(args[5], in_path, model_path, out_path);
  });

  auto* energy_cmd = app.add_subcommand(
      "energy", "Event counts and dynamic-power estimate per frame");
  std::string spikes_path;
  int output_spikes = 1;
  double frames_per_s = 50.0;
  energy_cmd->add_option("--spikes", spikes_path,
                         "count events of this spike file instead of a "
                         "representative frame");
  energy_cmd->add_option("--output-spikes", output_spikes,
                         "output-layer spikes per frame")
      ->capture_default_str();
  energy_cmd->add_option("--fps", frames_per_s, "classification rate, frames/s")
      ->capture_default_str();
  args[6].attach(energy_cmd, false, false, false);
  energy_cmd->callback([&] {
    exit_code = run_energy(args[6], spikes_path, output_spikes, frames_per_s);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "tempovad: error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
