// vavit/sim/scenario.hpp

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
#include <vector>

#include <Eigen/Dense>

#include "vavit/avmap/mapping.hpp"
#include "vavit/avmap/train.hpp"
#include "vavit/gaussian.hpp"
#include "vavit/observations.hpp"
#include "vavit/random.hpp"

namespace vavit::sim {

enum class FieldOfView { kFull, kPartial };
enum class SpeechMode { kAuto, kAlways, kNever };
enum class MappingSource { kReference, kDoa, kFile };

/// Optional per-person overrides.
struct PersonScript {
  std::optional<Vec6> initial_state;
  int enter_frame = 0;
  int exit_frame = -1;  // < 0: stays until the end
  SpeechMode speech = SpeechMode::kAuto;
  /// Multiplies the dynamics noise of this person.
  double noise_scale = 1.0;
};

/// Synthetic audio mapping the simulator draws features from.
struct ReferenceMappingConfig {
  MappingSource source = MappingSource::kReference;
  int K = 16;
  int J = 8;
  int R = 3;
  /// Feature units per pixel of the base affine map.
  double slope = 0.005;
  /// Residual standard deviation of every feature coordinate.
  double noise_std = 0.2;
  /// Relative deviation of the per-region slopes from the base map.
  double curvature = 0.15;
  double sigma_doa = 20.0;  // pixels; doa source
  std::string path;         // file source
  int n_train_pairs = 2000;
};

struct ScenarioConfig {
  int n_persons = 3;
  int n_frames = 500;
  Vec2 image_size = Vec2(1920.0, 1200.0);
  /// Standard deviations of the simulated process noise per state coordinate.
  Vec6 dynamics_noise_std = (Vec6() << 1.5, 1.5, 0.5, 0.5, 0.15, 0.15).finished();
  Vec2 size_min = Vec2(80.0, 160.0);
  Vec2 size_max = Vec2(160.0, 320.0);
  double detection_prob = 0.95;
  double clutter_rate_visual = 1.0;
  double max_box = 400.0;
  Vec4 visual_noise_std = Vec4(3.0, 3.0, 4.0, 4.0);
  int appearance_dim = 64;
  double prototype_concentration = 1.0;
  double observation_concentration = 500.0;
  /// Speech turn taking: mean turn and gap lengths (frames, geometric,
  /// at least min_segment), probability that a second person joins a turn.
  double turn_mean = 50.0;
  double gap_mean = 25.0;
  int min_segment = 5;
  double overlap_prob = 0.1;
  int active_subbands_min = 6;
  int active_subbands_max = 12;
  /// Probability that an active sub-band carries clutter instead of speech.
  double clutter_rate_audio = 0.05;
  /// Multiplies the standard deviation of the audio residual noise.
  double audio_noise_scale = 1.0;
  ReferenceMappingConfig mapping;
  FieldOfView fov = FieldOfView::kFull;
  double strip_width = 768.0;
  std::vector<PersonScript> persons;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  /// Visible x-range of the camera.
  double visible_lo() const;
  double visible_hi() const;
  bool visible(const Vec2& center) const;
  Mat4 visual_noise_cov() const;
};

struct PersonFrame {
  int id = 0;
  Vec6 state = Vec6::Zero();
  bool speaking = false;
  bool present = true;
};

struct GroundTruth {
  std::vector<std::vector<PersonFrame>> frames;  // [t][person]
  std::vector<Eigen::VectorXd> prototypes;       // h_n
};

/// Trajectories, appearance prototypes and speech activity.
GroundTruth generate_trajectories(const ScenarioConfig& config);

/// Per-frame visual observations. `apply_mask` = false skips the PFOV mask
/// (every other draw is unchanged).
std::vector<std::vector<VisualObservation>> render_visual(const GroundTruth& gt,
                                                          const ScenarioConfig& config,
                                                          bool apply_mask = true);

/// Per-frame audio observations drawn from `mapping`.
std::vector<std::vector<AudioObservation>> render_audio(const GroundTruth& gt,
                                                        const avmap::AudioMappingModel& mapping,
                                                        const ScenarioConfig& config);

/// Piecewise-affine mapping whose experts agree with one random base affine
/// map at their region centers; region centers tile the image along x.
avmap::AudioMappingModel make_reference_mapping(const ScenarioConfig& config);

/// Mapping selected by config.mapping.source.
avmap::AudioMappingModel scenario_mapping(const ScenarioConfig& config);

/// Source positions uniform over the image with features drawn from `mapping`.
std::vector<avmap::TrainingPair> sample_training_pairs(const avmap::AudioMappingModel& mapping,
                                                       const ScenarioConfig& config, int n,
                                                       std::uint64_t seed);

/// Draws g ~ N(L_r x + l_r, scale^2 Sigma_r) with r ~ p(r | x).
Eigen::VectorXd sample_feature(const avmap::SubbandMapping& m, const Vec2& x, double scale,
                               Rng& rng);

}  // namespace vavit::sim
