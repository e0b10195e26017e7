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

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tempovad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Per-frame classification label. `Unlabeled` marks frames without ground
/// truth (feature files written from raw audio with no label track).
enum class Label { Voice, NoVoice, Unlabeled };

inline char label_char(Label l) {
  switch (l) {
    case Label::Voice: return 'V';
    case Label::NoVoice: return 'N';
    default: return 'U';
  }
}

inline Label label_from_char(char c) {
  switch (c) {
    case 'V': return Label::Voice;
    case 'N': return Label::NoVoice;
    case 'U': return Label::Unlabeled;
    default:
      throw std::invalid_argument(std::string("unknown label character '") + c +
                                  "' (expected V, N or U)");
  }
}

/// Precondition check; throws std::invalid_argument with `msg` on failure.
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Log verbosity, controlled by the TEMPOVAD_LOG environment variable
// (error | warn | info | debug). Messages go to stderr.
enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level();
void log_msg(LogLevel level, const std::string& msg);

inline void log_info(const std::string& msg) { log_msg(LogLevel::Info, msg); }
inline void log_warn(const std::string& msg) { log_msg(LogLevel::Warn, msg); }
inline void log_debug(const std::string& msg) { log_msg(LogLevel::Debug, msg); }

}  // namespace tempovad
