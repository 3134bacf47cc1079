// core/src/json_util.cpp

// Copyright 2026  vavit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "vavit/json_util.hpp"

#include <fstream>
#include <sstream>

#include "vavit/errors.hpp"

namespace vavit {

Json vector_to_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

Eigen::VectorXd json_to_vector(const Json& j, std::string_view what, Eigen::Index expected) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected) {
    throw InputError(std::string(what) + ": expected " + std::to_string(expected) +
                     " entries, got " + std::to_string(j.size()));
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError(std::string(what) + ": non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd json_to_matrix(const Json& j, std::string_view what, Eigen::Index rows,
                               Eigen::Index cols) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected a nested array");
  const auto r = static_cast<Eigen::Index>(j.size());
  if (rows >= 0 && r != rows) {
    throw InputError(std::string(what) + ": expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(r));
  }
  if (r == 0) return Eigen::MatrixXd(0, cols < 0 ? 0 : cols);
  const Eigen::Index c = cols >= 0 ? cols : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    m.row(i) = json_to_vector(j[static_cast<std::size_t>(i)], what, c).transpose();
  }
  return m;
}

const Json& json_at(const Json& j, std::string_view key) {
  if (!j.is_object()) throw InputError("expected a JSON object while looking up '" + std::string(key) + "'");
  auto it = j.find(std::string(key));
  if (it == j.end()) throw InputError("missing field '" + std::string(key) + "'");
  return *it;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("short write to '" + path + "'");
}

ConfigReader::ConfigReader(const Json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
  if (!j_.is_object()) throw ConfigError(prefix_, "must be an object");
}

ConfigReader& ConfigReader::vec(const std::string& key, Eigen::Ref<Eigen::VectorXd> out) {
  seen_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end()) return *this;
  try {
    out = json_to_vector(*it, key, out.size());
  } catch (const InputError&) {
    throw ConfigError(field(key), "must hold " + std::to_string(out.size()) + " numbers");
  }
  return *this;
}

const Json* ConfigReader::find(const std::string& key) {
  seen_.insert(key);
  auto it = j_.find(key);
  return it == j_.end() ? nullptr : &*it;
}

const Json* ConfigReader::object(const std::string& key) {
  seen_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end()) return nullptr;
  if (!it->is_object()) throw ConfigError(field(key), "must be an object");
  return &*it;
}

void ConfigReader::finish() const {
  for (const auto& [key, v] : j_.items()) {
    if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
  }
}

void throw_config_error(const std::string& field, const std::string& what) {
  throw ConfigError(field, what);
}

}  // namespace vavit
