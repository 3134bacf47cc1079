// vavit/tracker/config.hpp

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

#include "vavit/gaussian.hpp"
#include "vavit/json_util.hpp"

namespace vavit::tracker {

struct TrackerConfig {
  /// VEM iterations per frame.
  int n_iter = 5;
  /// Uniform clutter supports. vol_V <= 0 means image_w * image_h * max_box^2;
  /// vol_G <= 0 means the feature box stored with each sub-band mapping.
  double vol_V = 0.0;
  double vol_H = 1.0;
  double vol_G = 0.0;
  double max_box = 400.0;
  /// Diarization threshold on the per-person share of active sub-bands.
  double gamma = 0.4;
  /// Birth window B; a birth needs B+1 consecutive clutter-assigned boxes.
  int birth_window = 3;
  /// Birth threshold tau on the sequence log marginal likelihood.
  double birth_threshold = -100.0;
  /// Maximum center displacement (pixels per frame) when linking boxes.
  double birth_gate = 60.0;
  /// Prior covariance scale of the first state in a birth sequence.
  double birth_prior_cov_scale = 1e4;
  double lambda_app = 10.0;
  double appearance_rate = 0.1;
  double init_cov_scale = 1e6;
  Vec2 image_size = Vec2(1920.0, 1200.0);
  /// Standard deviations of the initial dynamics covariance of a new track
  /// (also used to score birth sequences).
  Vec6 init_dynamics_std = (Vec6() << 2.0, 2.0, 1.0, 1.0, 0.5, 0.5).finished();
  /// Eigenvalue floor applied to every M-step estimate (pixel^2).
  double lambda_eps = 1e-6;
  bool m_step = true;
  bool m_step_every_iteration = true;
  /// Online-EM step size: each frame's closed-form estimate is blended into
  /// the running Lambda with this weight. 1 keeps the per-frame estimate.
  double lambda_step = 0.05;
  /// Disable the n = 0 hypothesis for visual observations.
  bool visual_clutter = true;
  /// When false, visual boxes still drive assignments and births but do not
  /// enter the state update (audio-only localization).
  bool visual_state_update = true;
  bool birth_enabled = true;
  /// Number of placeholder tracks created at initialization.
  int fixed_n = 0;
  double dormant_threshold = 0.1;
  int dormant_frames = 25;

  double log_vol_V() const;
  Mat6 init_dynamics_cov() const;
  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Reads the fields present in `j` over the defaults. Unknown keys are
/// rejected with a ConfigError naming the key.
TrackerConfig tracker_config_from_json(const Json& j);
Json to_json(const TrackerConfig& c);

}  // namespace vavit::tracker
