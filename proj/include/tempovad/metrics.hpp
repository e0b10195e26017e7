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

namespace tempovad {

/// Frame-level error rates; Voice is the positive class.
/// fa = FP/(FP+TN), mr = FN/(FN+TP), hter = (fa + mr)/2.
struct Metrics {
  double fa = 0.0;
  double mr = 0.0;
  double hter = 0.0;
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

/// Frame-level scoring of predictions against ground truth. Streams must
/// be the same length and the truth must contain both classes, otherwise
/// one of the rates is undefined.
Metrics score(const std::vector<Label>& pred, const std::vector<Label>& truth);

/// Metrics from pooled counts (for aggregating across clips).
Metrics metrics_from_counts(std::int64_t tp, std::int64_t tn, std::int64_t fp,
                            std::int64_t fn);

/// Report row: one evaluated (dataset, noise level, seed) combination.
struct ReportRow {
  std::string dataset;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  Metrics metrics;
};

void write_report(const std::string& path, const std::vector<ReportRow>& rows);

}  // namespace tempovad
