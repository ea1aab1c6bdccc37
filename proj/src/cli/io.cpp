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

#include "snowflake/cli/io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace snowflake::cli {
namespace {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InputError("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

bool looks_like_json(const std::string& content) {
  for (char c : content) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

json parse_json(const InputFile& file) {
  try {
    return json::parse(file.content);
  } catch (const json::exception& e) {
    throw InputError(file.path + ": invalid JSON: " + e.what());
  }
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw InputError(where + ": expected a non-empty array of rows");
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw InputError(where + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) {
        throw InputError(where + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not a number");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

Eigen::MatrixXd matrix_from_csv(const InputFile& file) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(file.content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || cell.find_first_not_of(" \t\r", used) != std::string::npos) {
        throw InputError(file.path + ":" + std::to_string(line_no) + ": '" + cell +
                         "' is not a number");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(file.path + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(file.path + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Eigen::MatrixXd point_rows(const InputFile& file, const char* key) {
  if (!looks_like_json(file.content)) return matrix_from_csv(file);
  const json j = parse_json(file);
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(file.path + ": missing \"" + std::string(key) + "\"");
  }
  return matrix_from_json(j.at(key), file.path);
}

}  // namespace

InputFile read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw InputError(path + ": read error");
  InputFile file{path, buffer.str(), {}};
  file.sha256 = sha256_hex(file.content);
  return file;
}

Eigen::MatrixXd parse_metric(const InputFile& file) {
  if (!looks_like_json(file.content)) return matrix_from_csv(file);
  const json j = parse_json(file);
  if (!j.is_object() || !j.contains("distances")) {
    throw InputError(file.path + ": missing \"distances\"");
  }
  Eigen::MatrixXd d = matrix_from_json(j.at("distances"), file.path);
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<long>() != d.rows()) {
      throw InputError(file.path + ": \"n\" does not match the distance matrix");
    }
  }
  return d;
}

Eigen::MatrixXd parse_points(const InputFile& file) { return point_rows(file, "points"); }

Eigen::MatrixXd parse_representatives(const InputFile& file) {
  return point_rows(file, "representatives");
}

OrthogonalAction parse_group(const InputFile& file) {
  const json j = parse_json(file);
  if (!j.is_object()) throw InputError(file.path + ": expected a JSON object");
  const double tol = j.value("tolerance", 1e-8);
  std::vector<Eigen::MatrixXd> matrices;
  const char* key = j.contains("matrices") ? "matrices" : "generators";
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(file.path + ": needs \"generators\" or \"matrices\"");
  }
  for (const auto& m : j.at(key)) matrices.push_back(matrix_from_json(m, file.path));
  if (j.contains("dim")) {
    const long dim = j.at("dim").get<long>();
    for (const auto& m : matrices) {
      if (m.rows() != dim || m.cols() != dim) {
        throw InputError(file.path + ": matrix size does not match \"dim\"");
      }
    }
    if (matrices.empty()) matrices.push_back(Eigen::MatrixXd::Identity(dim, dim));
  }
  if (matrices.empty()) throw InputError(file.path + ": no matrices and no \"dim\"");
  if (std::string(key) == "matrices") return OrthogonalAction::from_matrices(matrices, tol);
  return close_group(matrices, tol);
}

nlohmann::json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw InputError(path + ": write error");
}

}  // namespace snowflake::cli
