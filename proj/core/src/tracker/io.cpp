// core/src/tracker/io.cpp

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

#include "vavit/tracker/io.hpp"

#include "vavit/errors.hpp"

namespace vavit::tracker {

Json frame_output_to_json(const FrameOutput& out) {
  Json j;
  j["t"] = out.t;
  Json tracks = Json::array();
  for (const auto& tr : out.tracks) {
    Json o;
    o["id"] = tr.id;
    o["mu"] = vector_to_json(tr.belief.mean);
    o["gamma"] = matrix_to_json(tr.belief.cov);
    o["speaking"] = tr.speaking;
    o["dormant"] = tr.dormant;
    tracks.push_back(std::move(o));
  }
  j["tracks"] = std::move(tracks);
  j["births"] = out.births;
  return j;
}

FrameOutput frame_output_from_json(const Json& j) {
  FrameOutput out;
  try {
    out.t = json_at(j, "t").get<int>();
    for (const auto& o : json_at(j, "tracks")) {
      TrackOutput tr;
      tr.id = json_at(o, "id").get<int>();
      tr.belief.mean = json_to_vector(json_at(o, "mu"), "mu", 6);
      tr.belief.cov = json_to_matrix(json_at(o, "gamma"), "gamma", 6, 6);
      tr.speaking = json_at(o, "speaking").get<bool>();
      tr.dormant = json_at(o, "dormant").get<bool>();
      out.tracks.push_back(std::move(tr));
    }
    out.births = json_at(j, "births").get<std::vector<int>>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed track record: ") + e.what());
  }
  return out;
}

Json visuals_to_json(int t, const std::vector<VisualObservation>& visuals) {
  Json j;
  j["t"] = t;
  Json arr = Json::array();
  for (const auto& v : visuals) {
    Json o;
    o["v"] = vector_to_json(v.v);
    o["Phi"] = matrix_to_json(v.Phi);
    o["u"] = vector_to_json(v.u);
    arr.push_back(std::move(o));
  }
  j["visuals"] = std::move(arr);
  return j;
}

Json audios_to_json(int t, const std::vector<AudioObservation>& audios) {
  Json j;
  j["t"] = t;
  Json arr = Json::array();
  for (const auto& a : audios) {
    Json o;
    o["k"] = a.k;
    o["g"] = vector_to_json(a.g);
    arr.push_back(std::move(o));
  }
  j["audios"] = std::move(arr);
  return j;
}

std::vector<VisualObservation> visuals_from_json(const Json& j) {
  std::vector<VisualObservation> out;
  try {
    for (const auto& o : json_at(j, "visuals")) {
      VisualObservation v;
      v.v = json_to_vector(json_at(o, "v"), "v", 4);
      v.Phi = json_to_matrix(json_at(o, "Phi"), "Phi", 4, 4);
      v.u = json_to_vector(json_at(o, "u"), "u");
      out.push_back(std::move(v));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed visual record: ") + e.what());
  }
  return out;
}

std::vector<AudioObservation> audios_from_json(const Json& j) {
  std::vector<AudioObservation> out;
  try {
    for (const auto& o : json_at(j, "audios")) {
      AudioObservation a;
      a.k = json_at(o, "k").get<int>();
      a.g = json_to_vector(json_at(o, "g"), "g");
      out.push_back(std::move(a));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed audio record: ") + e.what());
  }
  return out;
}

std::string dump_line(const Json& j) { return j.dump(); }

}  // namespace vavit::tracker
