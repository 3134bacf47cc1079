// vavit/errors.hpp

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

#include <stdexcept>
#include <string>

namespace vavit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain caller input (bad dimensions, bad indices,
/// non-simplex descriptors, malformed files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not proceed, e.g. a covariance that is not
/// positive definite.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An invalid configuration value. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Audio mapping training failed (empty data, non-finite likelihood, ...).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// A score is undefined for the given input, e.g. MOTA with no ground truth.
class UndefinedScoreError : public Error {
 public:
  using Error::Error;
};

}  // namespace vavit
