// core/src/avmap/io.cpp

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

#include "vavit/avmap/io.hpp"

#include <string>

#include "vavit/errors.hpp"

namespace vavit::avmap {

Json model_to_json(const AudioMappingModel& model, const Json& metadata) {
  Json j;
  j["mode"] = model.mode == MappingMode::kDoaPoint ? "doa-point" : "learned";
  j["K"] = model.K();
  j["J"] = model.J();
  j["R"] = model.R();
  if (model.mode == MappingMode::kDoaPoint) j["sigma_doa"] = model.sigma_doa;
  Json bands = Json::array();
  for (const auto& b : model.subbands) {
    Json experts = Json::array();
    for (const auto& e : b.experts) {
      Json je;
      je["pi"] = e.pi;
      je["nu"] = vector_to_json(e.nu);
      je["Omega"] = matrix_to_json(e.Omega);
      je["L"] = matrix_to_json(e.L);
      je["l"] = vector_to_json(e.l);
      je["Sigma"] = matrix_to_json(e.Sigma);
      experts.push_back(std::move(je));
    }
    Json jb;
    jb["experts"] = std::move(experts);
    jb["feature_lo"] = vector_to_json(b.feature_lo);
    jb["feature_hi"] = vector_to_json(b.feature_hi);
    bands.push_back(std::move(jb));
  }
  j["subbands"] = std::move(bands);
  if (!metadata.empty()) j["metadata"] = metadata;
  return j;
}

ModelFile model_from_json(const Json& j) {
  ModelFile f;
  const std::string mode = json_at(j, "mode").get<std::string>();
  if (mode == "learned") {
    f.model.mode = MappingMode::kLearned;
  } else if (mode == "doa-point") {
    f.model.mode = MappingMode::kDoaPoint;
    f.model.sigma_doa = json_at(j, "sigma_doa").get<double>();
  } else {
    throw InputError("model: unknown mode '" + mode + "'");
  }
  const int K = json_at(j, "K").get<int>();
  const int J = json_at(j, "J").get<int>();
  const int R = json_at(j, "R").get<int>();
  const Json& bands = json_at(j, "subbands");
  if (!bands.is_array() || static_cast<int>(bands.size()) != K) {
    throw InputError("model: 'subbands' must hold K entries");
  }
  const Eigen::Index d = 2 * J;
  for (const auto& jb : bands) {
    SubbandMapping b;
    b.J = J;
    const Json& experts = json_at(jb, "experts");
    if (!experts.is_array() || static_cast<int>(experts.size()) != R) {
      throw InputError("model: each sub-band must hold R experts");
    }
    for (const auto& je : experts) {
      AffineExpert e;
      e.pi = json_at(je, "pi").get<double>();
      e.nu = json_to_vector(json_at(je, "nu"), "nu", 2);
      e.Omega = json_to_matrix(json_at(je, "Omega"), "Omega", 2, 2);
      e.L = json_to_matrix(json_at(je, "L"), "L", d, 2);
      e.l = json_to_vector(json_at(je, "l"), "l", d);
      e.Sigma = json_to_matrix(json_at(je, "Sigma"), "Sigma", d, d);
      b.experts.push_back(std::move(e));
    }
    b.feature_lo = json_to_vector(json_at(jb, "feature_lo"), "feature_lo", d);
    b.feature_hi = json_to_vector(json_at(jb, "feature_hi"), "feature_hi", d);
    f.model.subbands.push_back(std::move(b));
  }
  if (auto it = j.find("metadata"); it != j.end()) f.metadata = *it;
  f.model.validate();
  return f;
}

void save_model(const std::string& path, const AudioMappingModel& model, const Json& metadata) {
  write_text_file(path, model_to_json(model, metadata).dump(1) + "\n");
}

ModelFile load_model(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError("model '" + path + "': " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError("model '" + path + "': " + e.what());
  }
}

}  // namespace vavit::avmap
