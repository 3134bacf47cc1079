// vavit/tracker/tracker.hpp

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

#include <memory>
#include <optional>
#include <vector>

#include "vavit/avmap/mapping.hpp"
#include "vavit/observations.hpp"
#include "vavit/tracker/birth.hpp"
#include "vavit/tracker/config.hpp"
#include "vavit/tracker/vem.hpp"

namespace vavit::tracker {

struct TrackOutput {
  int id = 0;
  GaussianBelief belief;
  bool speaking = false;
  bool dormant = false;
};

struct FrameOutput {
  int t = 0;
  std::vector<TrackOutput> tracks;
  AssignmentPosterior assignments;
  std::vector<int> births;
  /// Prior covariances that had to be projected back to SPD this frame.
  int guarded = 0;
};

/// Online variational audio-visual tracker. One instance per stream; `step`
/// is not reentrant.
class Tracker {
 public:
  /// `mapping` may be null for visual-only operation; audio observations are
  /// then rejected.
  explicit Tracker(TrackerConfig config,
                   std::shared_ptr<const avmap::AudioMappingModel> mapping = nullptr);

  /// Processes the next frame.
  FrameOutput step(const FrameObservations& frame);

  /// Adds a live track and returns its id. `appearance` may be empty to
  /// disable the appearance term for this person.
  int add_track(const GaussianBelief& belief, const Eigen::VectorXd& appearance,
                const Mat6& dynamics_cov);

  const TrackerConfig& config() const { return config_; }
  const std::vector<PersonTrack>& tracks() const { return tracks_; }
  /// Fixed-N placeholders not yet claimed by a birth.
  const std::vector<PersonTrack>& placeholders() const { return placeholders_; }
  const BirthPool& birth_pool() const { return pool_; }
  /// Index of the next frame `step` will process.
  int frame_index() const { return t_; }

 private:
  void validate_frame(const FrameObservations& frame) const;
  int claim_id();

  TrackerConfig config_;
  std::shared_ptr<const avmap::AudioMappingModel> mapping_;
  std::optional<PreparedAudioModel> prepared_;
  std::vector<PersonTrack> tracks_;
  std::vector<PersonTrack> placeholders_;
  BirthPool pool_;
  int next_id_ = 1;
  int t_ = 0;
};

}  // namespace vavit::tracker
