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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <doctest.h>

#include "tempovad/metrics.hpp"
#include "tempovad/rng.hpp"

using namespace tempovad;

namespace {

std::vector<Label> stream(const std::string& labels) {
  std::vector<Label> out;
  for (char c : labels) {
    out.push_back(c == 'V' ? Label::Voice : Label::NoVoice);
  }
  return out;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("a perfect prediction scores zero everywhere") {
  const auto truth = stream("VVNNVN");
  const Metrics m = score(truth, truth);
  CHECK(m.fa == 0.0);
  CHECK(m.mr == 0.0);
  CHECK(m.hter == 0.0);
  CHECK(m.tp == 3);
  CHECK(m.tn == 3);
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
}

TEST_CASE("always-voice on balanced truth gives the trivial 0.5") {
  const Metrics m = score(stream("VVVVVV"), stream("VVVNNN"));
  CHECK(m.fa == 1.0);
  CHECK(m.mr == 0.0);
  CHECK(m.hter == 0.5);
}

TEST_CASE("a constructed confusion yields the exact averaged rate") {
  // Truth: 10 voiced, 10 unvoiced. Predictions miss 2 voiced frames
  // (mr = 0.2) and raise 1 false alarm (fa = 0.1) -> hter = 0.15.
  const auto truth = stream("VVVVVVVVVVNNNNNNNNNN");
  const auto pred = stream("VVVVVVVVNNVNNNNNNNNN");
  const Metrics m = score(pred, truth);
  CHECK(m.fa == 0.1);
  CHECK(m.mr == 0.2);
  CHECK(m.hter == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(m.tp == 8);
  CHECK(m.fn == 2);
  CHECK(m.fp == 1);
  CHECK(m.tn == 9);
}

TEST_CASE("swapping both label streams swaps fa and mr, fixing hter") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string t = "VN";  // both classes guaranteed
    std::string p = "NV";
    for (int i = 0; i < 40; ++i) {
      t += rng.uniform() < 0.5 ? 'V' : 'N';
      p += rng.uniform() < 0.5 ? 'V' : 'N';
    }
    auto flip = [](std::string s) {
      for (char& c : s) c = c == 'V' ? 'N' : 'V';
      return s;
    };
    const Metrics m = score(stream(p), stream(t));
    const Metrics w = score(stream(flip(p)), stream(flip(t)));
    CHECK(m.fa == w.mr);
    CHECK(m.mr == w.fa);
    CHECK(m.hter == w.hter);
    CHECK(m.tp == w.tn);
    CHECK(m.fp == w.fn);
  }
}

TEST_CASE("a coin-flip classifier scores near the chance rate") {
  Rng rng(515);
  std::vector<Label> truth, pred;
  for (int i = 0; i < 10000; ++i) {
    truth.push_back(i % 2 == 0 ? Label::Voice : Label::NoVoice);
    pred.push_back(rng.uniform() < 0.5 ? Label::Voice : Label::NoVoice);
  }
  const Metrics m = score(pred, truth);
  CHECK(m.hter > 0.45);
  CHECK(m.hter < 0.55);
}

TEST_CASE("score and metrics_from_counts agree") {
  Rng r(611);
  for (int trial = 0; trial < 100; ++trial) {
    std::string t = "VN";
    std::string p = "VN";
    for (int i = 0; i < 30; ++i) {
      t += r.uniform() < 0.5 ? 'V' : 'N';
      p += r.uniform() < 0.5 ? 'V' : 'N';
    }
    const Metrics m = score(stream(p), stream(t));
    const Metrics c = metrics_from_counts(m.tp, m.tn, m.fp, m.fn);
    CHECK(m.fa == c.fa);
    CHECK(m.mr == c.mr);
    CHECK(m.hter == c.hter);
  }
}

TEST_CASE("mismatched stream lengths are rejected") {
  CHECK_THROWS_WITH_AS(score(stream("VV"), stream("VNV")),
                       doctest::Contains("length"), std::invalid_argument);
}

TEST_CASE("single-class truth is rejected") {
  CHECK_THROWS_AS(score(stream("VN"), stream("VV")), std::invalid_argument);
  CHECK_THROWS_AS(score(stream("VN"), stream("NN")), std::invalid_argument);
}

TEST_CASE("unlabeled frames cannot be scored") {
  std::vector<Label> truth = {Label::Voice, Label::Unlabeled, Label::NoVoice};
  std::vector<Label> pred = stream("VNN");
  CHECK_THROWS_AS(score(pred, truth), std::invalid_argument);
  std::vector<Label> bad_pred = {Label::Unlabeled, Label::Voice,
                                 Label::NoVoice};
  CHECK_THROWS_AS(score(bad_pred, stream("VNV")), std::invalid_argument);
}

TEST_CASE("report files carry the documented header and one row per entry") {
  ReportRow row;
  row.dataset = "clip_000";
  row.snr_db = 15.0;
  row.seed = 7;
  row.metrics = score(stream("VVNN"), stream("VNVN"));
  const std::string path =
      (std::filesystem::temp_directory_path() / "tv_report.csv").string();
  write_report(path, {row, row});

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "dataset,snr_db,seed,fa,mr,hter,tp,tn,fp,fn");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      ++rows;
      CHECK(line.substr(0, 9) == "clip_000,");
    }
  }
  CHECK(rows == 2);
  std::remove(path.c_str());
}

}  // TEST_SUITE
