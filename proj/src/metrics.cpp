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

#include "tempovad/metrics.hpp"

#include <cstdio>
#include <fstream>

namespace tempovad {

Metrics metrics_from_counts(std::int64_t tp, std::int64_t tn, std::int64_t fp,
                            std::int64_t fn) {
  require(fp + tn > 0, "no NoVoice frames in truth; false-alarm rate undefined");
  require(fn + tp > 0, "no Voice frames in truth; miss rate undefined");
  Metrics m;
  m.tp = tp;
  m.tn = tn;
  m.fp = fp;
  m.fn = fn;
  m.fa = static_cast<double>(fp) / static_cast<double>(fp + tn);
  m.mr = static_cast<double>(fn) / static_cast<double>(fn + tp);
  m.hter = 0.5 * m.mr + 0.5 * m.fa;
  return m;
}

Metrics score(const std::vector<Label>& pred,
              const std::vector<Label>& truth) {
  require(pred.size() == truth.size(),
          "prediction and truth streams differ in length (" +
              std::to_string(pred.size()) + " vs " +
              std::to_string(truth.size()) + ")");
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    require(truth[i] != Label::Unlabeled, "truth stream has unlabeled frames");
    require(pred[i] != Label::Unlabeled, "prediction stream has unlabeled frames");
    const bool t = truth[i] == Label::Voice;
    const bool p = pred[i] == Label::Voice;
    if (t && p) ++tp;
    else if (!t && !p) ++tn;
    else if (!t && p) ++fp;
    else ++fn;
  }
  return metrics_from_counts(tp, tn, fp, fn);
}

void write_report(const std::string& path,
                  const std::vector<ReportRow>& rows) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << "dataset,snr_db,seed,fa,mr,hter,tp,tn,fp,fn\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), ",%g,%llu,%.10g,%.10g,%.10g,%lld,%lld,%lld,%lld\n",
                  r.snr_db, static_cast<unsigned long long>(r.seed),
                  r.metrics.fa, r.metrics.mr, r.metrics.hter,
                  static_cast<long long>(r.metrics.tp),
                  static_cast<long long>(r.metrics.tn),
                  static_cast<long long>(r.metrics.fp),
                  static_cast<long long>(r.metrics.fn));
    out << r.dataset << buf;
  }
  require(out.good(), "write failed for " + path);
}

}  // namespace tempovad
