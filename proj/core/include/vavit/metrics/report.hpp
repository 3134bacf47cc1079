// vavit/metrics/report.hpp

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

#include <optional>
#include <string>
#include <vector>

#include "vavit/json_util.hpp"
#include "vavit/metrics/clear_mot.hpp"
#include "vavit/metrics/der.hpp"
#include "vavit/metrics/ospa.hpp"
#include "vavit/sim/scenario.hpp"
#include "vavit/tracker/tracker.hpp"

namespace vavit::metrics {

struct MetricsConfig {
  GatePolicy gate;
  OspaParams ospa;
  int der_collar = 6;
  /// Score tracks flagged dormant as regular estimates.
  bool include_dormant = false;
};

MetricsConfig metrics_config_from_json(const Json& j);
Json to_json(const MetricsConfig& c);

/// Present ground-truth persons as boxes, with speaking flags.
TrackSet gt_track_set(const std::vector<std::vector<sim::PersonFrame>>& gt);
/// Tracker output boxes (P_f mu); dormant tracks skipped unless asked for.
TrackSet est_track_set(const std::vector<tracker::FrameOutput>& out, bool include_dormant = false);

/// Speaking sets; estimated ids are mapped through `correspondence`, and
/// ids without a partner get fresh ids above every ground-truth id.
SpeechActivity gt_speech(const TrackSet& gt);
SpeechActivity est_speech(const TrackSet& est, const std::map<int, int>& correspondence,
                          int fresh_base);

struct EvaluationReport {
  MetricsConfig params;
  MotReport mot;
  OspaResult ospa;
  std::optional<DerBreakdown> der;  // empty when the ground truth has no speech
  /// RMS center distance over matched (gt, est) pairs.
  double position_rmse = 0.0;
  long matched = 0;
};

EvaluationReport evaluate(const TrackSet& gt, const TrackSet& est, const MetricsConfig& config);

/// Applies the partial field of view of a scenario to the gate policy.
void apply_fov(MetricsConfig& config, const sim::ScenarioConfig& scenario);

Json report_to_json(const EvaluationReport& r, const Json& echo = Json::object());
/// t,ospa,fp,fn,ids
std::string report_csv(const EvaluationReport& r);

}  // namespace vavit::metrics
