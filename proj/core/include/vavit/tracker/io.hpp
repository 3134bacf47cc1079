// vavit/tracker/io.hpp

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

#include "vavit/json_util.hpp"
#include "vavit/observations.hpp"
#include "vavit/tracker/tracker.hpp"

namespace vavit::tracker {

/// {t, tracks: [{id, mu[6], gamma[6][6], speaking, dormant}], births: [ids]}
Json frame_output_to_json(const FrameOutput& out);
FrameOutput frame_output_from_json(const Json& j);

/// One visual or audio frame line: {t, visuals: [{v, Phi, u}]} / {t, audios: [{k, g}]}.
Json visuals_to_json(int t, const std::vector<VisualObservation>& visuals);
Json audios_to_json(int t, const std::vector<AudioObservation>& audios);
std::vector<VisualObservation> visuals_from_json(const Json& j);
std::vector<AudioObservation> audios_from_json(const Json& j);

/// Compact single-line serialization used by every .jsonl file.
std::string dump_line(const Json& j);

}  // namespace vavit::tracker
