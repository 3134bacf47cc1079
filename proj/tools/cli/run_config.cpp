// tools/cli/run_config.cpp

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

#include "cli/run_config.hpp"

#include <cstdlib>

#include "vavit/errors.hpp"
#include "vavit/sim/io.hpp"

namespace vavit::cli {

namespace {

avmap::TrainingOptions training_from_json(const Json& j) {
  avmap::TrainingOptions t;
  ConfigReader r(j, "training");
  r.get("R", t.R).get("max_iter", t.max_iter).get("tol", t.tol).get("cov_floor", t.cov_floor);
  r.finish();
  if (t.R < 1) throw ConfigError("training.R", "must be >= 1");
  if (t.max_iter < 1) throw ConfigError("training.max_iter", "must be >= 1");
  if (!(t.tol >= 0.0)) throw ConfigError("training.tol", "must be >= 0");
  if (!(t.cov_floor > 0.0)) throw ConfigError("training.cov_floor", "must be positive");
  return t;
}

Json to_json(const avmap::TrainingOptions& t) {
  Json j;
  j["R"] = t.R;
  j["max_iter"] = t.max_iter;
  j["tol"] = t.tol;
  j["cov_floor"] = t.cov_floor;
  return j;
}

}  // namespace

RunConfig run_config_from_json(const Json& j) {
  RunConfig c;
  ConfigReader r(j, "config");
  if (const Json* t = r.object("tracker")) c.tracker = tracker::tracker_config_from_json(*t);
  if (const Json* s = r.object("scenario")) c.scenario = sim::scenario_config_from_json(*s);
  if (const Json* m = r.object("metrics")) c.metrics = metrics::metrics_config_from_json(*m);
  if (const Json* t = r.object("training")) c.training = training_from_json(*t);
  r.get("seed", c.seed);
  r.finish();
  c.tracker.validate();
  return c;
}

Json to_json(const RunConfig& c) {
  Json j;
  j["tracker"] = tracker::to_json(c.tracker);
  Json s = sim::to_json(c.scenario);
  s.erase("seed");  // the top-level seed is authoritative
  j["scenario"] = std::move(s);
  j["metrics"] = metrics::to_json(c.metrics);
  j["training"] = to_json(c.training);
  j["seed"] = c.seed;
  return j;
}

RunConfig load_run_config(const std::string& path, std::optional<std::uint64_t> seed_flag) {
  Json j = Json::object();
  if (!path.empty()) {
    const std::string text = read_text_file(path);
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
  }
  RunConfig c = run_config_from_json(j);
  if (seed_flag) {
    c.seed = *seed_flag;
  } else if (const char* env = std::getenv("VAVIT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') throw ConfigError("VAVIT_SEED", "must be an unsigned integer");
    c.seed = v;
  }
  c.scenario.seed = c.seed;
  c.training.seed = c.seed;
  return c;
}

std::string config_reference() {
  RunConfig defaults;
  return "Run configuration (JSON). Every key is optional; unknown keys are rejected.\n"
         "Defaults:\n" +
         to_json(defaults).dump(2) + "\n";
}

}  // namespace vavit::cli
