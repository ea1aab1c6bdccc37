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

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "snowflake/group_quotient.hpp"

namespace snowflake::cli {

/// I/O or parse failure; maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputFile {
  std::string path;
  std::string content;
  std::string sha256;  // lowercase hex
};

InputFile read_input(const std::string& path);

/// {"n": int, "distances": [[...]]} or a CSV square matrix.
Eigen::MatrixXd parse_metric(const InputFile& file);

/// {"points": [[...]]} or CSV, one point per row.
Eigen::MatrixXd parse_points(const InputFile& file);

/// {"representatives": [[...]]} or CSV, one point per row.
Eigen::MatrixXd parse_representatives(const InputFile& file);

/// {"dim": m, "generators": [[[...]]], "tolerance": t} closes the generators;
/// {"matrices": [...]} takes a pre-closed group. An empty generator list
/// gives the trivial group on E^dim.
OrthogonalAction parse_group(const InputFile& file);

nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const Eigen::VectorXd& v);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace snowflake::cli
