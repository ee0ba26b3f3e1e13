// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace choiqpt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

/// Bad flags, unreadable files, malformed JSON.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string circuit_path;
  std::string calib_path;    // empty: noiseless
  std::string dataset_path;  // analyze only
  std::string out_dir = ".";
  std::vector<std::size_t> layout;  // empty: 0..K-1
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  bool exact = false;
  bool cptp = true;
  std::size_t threads = 0;
  std::optional<double> min_fidelity;
};

struct GateCheck {
  std::string identity;
  bool pass = false;
  double deviation = 0.0;
  std::string detail;
};

/// Runs the algebraic gate checks. A non-empty `corrupt_gate` perturbs that
/// entry of the gate table first, which must make some check fail.
std::vector<GateCheck> gate_checks(const std::string& corrupt_gate = "");

int cmd_gate_check(std::ostream& out, const std::string& corrupt_gate = "");
int cmd_run(const RunConfig& config, std::ostream& out);
int cmd_execute(const RunConfig& config, std::ostream& out);
int cmd_analyze(const RunConfig& config, std::ostream& out);

/// Full command line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace choiqpt
