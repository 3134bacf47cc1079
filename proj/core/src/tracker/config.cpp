// core/src/tracker/config.cpp

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

#include "vavit/tracker/config.hpp"

#include <cmath>
#include <string>

#include "vavit/errors.hpp"

namespace vavit::tracker {

double TrackerConfig::log_vol_V() const {
  if (vol_V > 0.0) return std::log(vol_V);
  return std::log(image_size.x()) + std::log(image_size.y()) + 2.0 * std::log(max_box);
}

Mat6 TrackerConfig::init_dynamics_cov() const {
  return init_dynamics_std.array().square().matrix().asDiagonal();
}

void TrackerConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
  };
  require(n_iter >= 1, "n_iter", "must be >= 1");
  require(vol_V >= 0.0, "vol_V", "must be >= 0 (0 selects the default)");
  require(vol_H > 0.0, "vol_H", "must be positive");
  require(vol_G >= 0.0, "vol_G", "must be >= 0 (0 selects the mapping's box)");
  require(max_box > 0.0, "max_box", "must be positive");
  require(gamma > 0.0 && gamma < 1.0, "gamma", "must lie in (0, 1)");
  require(birth_window >= 1, "birth_window", "must be >= 1");
  require(std::isfinite(birth_threshold), "birth_threshold", "must be finite");
  require(birth_gate > 0.0, "birth_gate", "must be positive");
  require(birth_prior_cov_scale > 0.0, "birth_prior_cov_scale", "must be positive");
  require(lambda_app > 0.0, "lambda_app", "must be positive");
  require(appearance_rate >= 0.0 && appearance_rate <= 1.0, "appearance_rate",
          "must lie in [0, 1]");
  require(init_cov_scale > 0.0, "init_cov_scale", "must be positive");
  require(image_size.x() > 0.0 && image_size.y() > 0.0, "image_size", "must be positive");
  require((init_dynamics_std.array() > 0.0).all(), "init_dynamics_std", "must be positive");
  require(lambda_eps > 0.0, "lambda_eps", "must be positive");
  require(lambda_step > 0.0 && lambda_step <= 1.0, "lambda_step", "must be in (0, 1]");
  require(fixed_n >= 0, "fixed_n", "must be >= 0");
  require(dormant_threshold >= 0.0, "dormant_threshold", "must be >= 0");
  require(dormant_frames >= 1, "dormant_frames", "must be >= 1");
}

namespace {

template <typename T>
void read(const Json& j, const char* key, T& out) {
  try {
    out = j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(key, "has the wrong type");
  }
}

}  // namespace

TrackerConfig tracker_config_from_json(const Json& j) {
  TrackerConfig c;
  if (!j.is_object()) throw ConfigError("tracker", "must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "n_iter") read(v, "n_iter", c.n_iter);
    else if (key == "vol_V") read(v, "vol_V", c.vol_V);
    else if (key == "vol_H") read(v, "vol_H", c.vol_H);
    else if (key == "vol_G") read(v, "vol_G", c.vol_G);
    else if (key == "max_box") read(v, "max_box", c.max_box);
    else if (key == "gamma") read(v, "gamma", c.gamma);
    else if (key == "birth_window") read(v, "birth_window", c.birth_window);
    else if (key == "birth_threshold") read(v, "birth_threshold", c.birth_threshold);
    else if (key == "birth_gate") read(v, "birth_gate", c.birth_gate);
    else if (key == "birth_prior_cov_scale") read(v, "birth_prior_cov_scale", c.birth_prior_cov_scale);
    else if (key == "lambda_app") read(v, "lambda_app", c.lambda_app);
    else if (key == "appearance_rate") read(v, "appearance_rate", c.appearance_rate);
    else if (key == "init_cov_scale") read(v, "init_cov_scale", c.init_cov_scale);
    else if (key == "image_size") {
      try {
        c.image_size = json_to_vector(v, "image_size", 2);
      } catch (const InputError&) {
        throw ConfigError("image_size", "must be [width, height]");
      }
    } else if (key == "init_dynamics_std") {
      try {
        c.init_dynamics_std = json_to_vector(v, "init_dynamics_std", 6);
      } catch (const InputError&) {
        throw ConfigError("init_dynamics_std", "must hold 6 numbers");
      }
    }
    else if (key == "lambda_eps") read(v, "lambda_eps", c.lambda_eps);
    else if (key == "m_step") read(v, "m_step", c.m_step);
    else if (key == "m_step_every_iteration") read(v, "m_step_every_iteration", c.m_step_every_iteration);
    else if (key == "lambda_step") read(v, "lambda_step", c.lambda_step);
    else if (key == "visual_clutter") read(v, "visual_clutter", c.visual_clutter);
    else if (key == "visual_state_update") read(v, "visual_state_update", c.visual_state_update);
    else if (key == "birth_enabled") read(v, "birth_enabled", c.birth_enabled);
    else if (key == "fixed_n") read(v, "fixed_n", c.fixed_n);
    else if (key == "dormant_threshold") read(v, "dormant_threshold", c.dormant_threshold);
    else if (key == "dormant_frames") read(v, "dormant_frames", c.dormant_frames);
    else throw ConfigError("tracker." + key, "unknown key");
  }
  c.validate();
  return c;
}

Json to_json(const TrackerConfig& c) {
  Json j;
  j["n_iter"] = c.n_iter;
  j["vol_V"] = c.vol_V;
  j["vol_H"] = c.vol_H;
  j["vol_G"] = c.vol_G;
  j["max_box"] = c.max_box;
  j["gamma"] = c.gamma;
  j["birth_window"] = c.birth_window;
  j["birth_threshold"] = c.birth_threshold;
  j["birth_gate"] = c.birth_gate;
  j["birth_prior_cov_scale"] = c.birth_prior_cov_scale;
  j["lambda_app"] = c.lambda_app;
  j["appearance_rate"] = c.appearance_rate;
  j["init_cov_scale"] = c.init_cov_scale;
  j["image_size"] = vector_to_json(c.image_size);
  j["init_dynamics_std"] = vector_to_json(c.init_dynamics_std);
  j["lambda_eps"] = c.lambda_eps;
  j["m_step"] = c.m_step;
  j["m_step_every_iteration"] = c.m_step_every_iteration;
  j["lambda_step"] = c.lambda_step;
  j["visual_clutter"] = c.visual_clutter;
  j["visual_state_update"] = c.visual_state_update;
  j["birth_enabled"] = c.birth_enabled;
  j["fixed_n"] = c.fixed_n;
  j["dormant_threshold"] = c.dormant_threshold;
  j["dormant_frames"] = c.dormant_frames;
  return j;
}

}  // namespace vavit::tracker
