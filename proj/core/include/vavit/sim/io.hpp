// vavit/sim/io.hpp

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
#include <vector>

#include "vavit/avmap/train.hpp"
#include "vavit/json_util.hpp"
#include "vavit/sim/scenario.hpp"

namespace vavit::sim {

ScenarioConfig scenario_config_from_json(const Json& j);
Json to_json(const ScenarioConfig& c);

Json gt_frame_to_json(int t, const std::vector<PersonFrame>& frame);
std::vector<PersonFrame> gt_frame_from_json(const Json& j);

/// {x: [2], g: [K][2J]}
Json training_pair_to_json(const avmap::TrainingPair& p);
avmap::TrainingPair training_pair_from_json(const Json& j);

/// Reads a line-delimited JSON file. Malformed lines raise InputError with
/// the 1-based line number.
std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Json>& lines);

struct Bundle {
  ScenarioConfig config;
  GroundTruth gt;
  std::vector<std::vector<VisualObservation>> visuals;
  std::vector<std::vector<AudioObservation>> audios;
  avmap::AudioMappingModel mapping;
  std::vector<avmap::TrainingPair> training_pairs;
};

/// Generates every stream of a scenario.
Bundle simulate(const ScenarioConfig& config);

/// Writes gt.jsonl, visual.jsonl, audio.jsonl, scenario.meta.json,
/// reference_model.json and, when present, train_pairs.jsonl into `dir`
/// (created if needed). `echo` is embedded in the meta file.
void write_bundle(const std::string& dir, const Bundle& bundle, const Json& echo);

/// Frame-indexed streams as read back from disk. Frame indices must run
/// 0, 1, ... without gaps.
std::vector<std::vector<PersonFrame>> read_gt(const std::string& path);
std::vector<std::vector<VisualObservation>> read_visual_stream(const std::string& path);
std::vector<std::vector<AudioObservation>> read_audio_stream(const std::string& path);

}  // namespace vavit::sim
