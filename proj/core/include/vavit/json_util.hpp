// vavit/json_util.hpp

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

#pragma once

#include <set>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace vavit {

// Every file the library writes uses insertion-ordered objects so field
// order is deterministic and matches the documented schemas.
using Json = nlohmann::ordered_json;

Json vector_to_json(const Eigen::Ref<const Eigen::VectorXd>& v);
/// Row-major nested arrays.
Json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Parses a numeric array; `expected` < 0 accepts any length. Throws
/// InputError naming `what` on mismatch.
Eigen::VectorXd json_to_vector(const Json& j, std::string_view what, Eigen::Index expected = -1);
Eigen::MatrixXd json_to_matrix(const Json& j, std::string_view what, Eigen::Index rows = -1,
                               Eigen::Index cols = -1);

/// j[key] or InputError naming the key.
const Json& json_at(const Json& j, std::string_view key);

std::string read_text_file(const std::string& path);
/// Writes atomically enough for our purposes: truncate then write.
void write_text_file(const std::string& path, std::string_view content);

/// Reads the fields of a config object over caller defaults and rejects
/// keys nobody asked for. Errors are ConfigErrors named "<prefix>.<key>".
class ConfigReader {
 public:
  ConfigReader(const Json& j, std::string prefix);

  template <typename T>
  ConfigReader& get(const std::string& key, T& out);
  ConfigReader& vec(const std::string& key, Eigen::Ref<Eigen::VectorXd> out);
  /// The value under `key`, or null when absent. Marks the key as known.
  const Json* find(const std::string& key);
  /// The sub-object under `key`, or null when absent.
  const Json* object(const std::string& key);
  /// Throws on the first key that was never read.
  void finish() const;

  std::string field(const std::string& key) const { return prefix_ + "." + key; }

 private:
  const Json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

[[noreturn]] void throw_config_error(const std::string& field, const std::string& what);

template <typename T>
ConfigReader& ConfigReader::get(const std::string& key, T& out) {
  seen_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end()) return *this;
  try {
    out = it->template get<T>();
  } catch (const Json::exception&) {
    throw_config_error(field(key), "has the wrong type");
  }
  return *this;
}

}  // namespace vavit
