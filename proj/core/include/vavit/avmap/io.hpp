// vavit/avmap/io.hpp

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

#include <string>

#include "vavit/avmap/mapping.hpp"
#include "vavit/json_util.hpp"

namespace vavit::avmap {

/// Model document:
///   {mode, K, J, R, sigma_doa?, subbands: [{experts: [{pi, nu, Omega, L, l,
///   Sigma}], feature_lo, feature_hi}], metadata?}
/// Matrices are row-major nested arrays. Doubles are written in their
/// shortest round-trip decimal form, so load -> save is byte-identical.
struct ModelFile {
  AudioMappingModel model;
  Json metadata = Json::object();
};

Json model_to_json(const AudioMappingModel& model, const Json& metadata = Json::object());
ModelFile model_from_json(const Json& j);

void save_model(const std::string& path, const AudioMappingModel& model,
                const Json& metadata = Json::object());
ModelFile load_model(const std::string& path);

}  // namespace vavit::avmap
