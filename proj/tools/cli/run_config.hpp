// tools/cli/run_config.hpp

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

#include <cstdint>
#include <optional>
#include <string>

#include "vavit/avmap/train.hpp"
#include "vavit/json_util.hpp"
#include "vavit/metrics/report.hpp"
#include "vavit/sim/scenario.hpp"
#include "vavit/tracker/config.hpp"

namespace vavit::cli {

/// Everything one invocation needs. A run config file is a single JSON
/// object with optional sections {tracker, scenario, metrics, training} and
/// an optional top-level seed.
struct RunConfig {
  tracker::TrackerConfig tracker;
  sim::ScenarioConfig scenario;
  metrics::MetricsConfig metrics;
  avmap::TrainingOptions training;
  std::uint64_t seed = 0;
};

RunConfig run_config_from_json(const Json& j);
/// Full resolved configuration, echoed into every output.
Json to_json(const RunConfig& c);

/// Loads `path` (empty path: all defaults) and applies the seed override:
/// `seed_flag` if given, else the VAVIT_SEED environment variable, else the
/// file's seed. The seed is propagated to the scenario and the training.
RunConfig load_run_config(const std::string& path, std::optional<std::uint64_t> seed_flag);

/// Help text listing every key with its default.
std::string config_reference();

}  // namespace vavit::cli
