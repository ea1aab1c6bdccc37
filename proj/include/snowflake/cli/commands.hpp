// Copyright 2026 The snowflake-embed Authors
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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace snowflake::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kPass = 0,
  kPropertyFails = 2,
  kInputError = 3,
  kUsageError = 4,
};

struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::array();  // [{"path", "sha256"}]
  bool pass = false;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  /// Human-readable lines printed when --json is not requested.
  std::vector<std::string> summary;

  nlohmann::json to_json() const;
};

struct CommandResult {
  int exit_code = kPass;
  RunReport report;
};

struct ValidateArgs {
  std::string metric_file;
  double tol = 1e-9;
};

struct NegtypeArgs {
  std::string metric_file;
  std::optional<double> alpha;
  bool strict = false;
  double tol = 1e-9;
  double validate_tol = 1e-9;
};

struct EmbedArgs {
  std::string metric_file;
  std::optional<double> alpha;
  double tol = 1e-9;
  double validate_tol = 1e-9;
  std::string out;  // coordinates JSON, skipped when empty
};

struct SchoenbergArgs {
  double alpha = 0.5;  // snowflake exponent a; the identity checked is for t^{2a}
  std::vector<double> t_grid{0.1, 0.5, 1.0, 2.0, 10.0};
  double quad_tol = 1e-6;
};

struct QuotientEmbedArgs {
  std::string group_file;
  std::string reps_file;
  double alpha = 0.5;
  double tol = 1e-8;
  double lift_tol = 1e-9;
  std::string out;  // L_1(n,G) points JSON, skipped when empty
};

CommandResult cmd_validate(const ValidateArgs& args);
CommandResult cmd_negtype(const NegtypeArgs& args);
CommandResult cmd_embed(const EmbedArgs& args);
CommandResult cmd_schoenberg(const SchoenbergArgs& args);
CommandResult cmd_quotient_embed(const QuotientEmbedArgs& args);

/// Parses argv, dispatches, writes --json reports and prints summaries.
/// Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace snowflake::cli
