// vavit/metrics/clear_mot.hpp

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

#include <map>
#include <utility>
#include <vector>

#include "vavit/gaussian.hpp"

namespace vavit::metrics {

/// One labeled object in one frame: box = (center x, center y, width, height).
struct TrackItem {
  int id = 0;
  Vec4 box = Vec4::Zero();
  bool speaking = false;
};
using TrackFrame = std::vector<TrackItem>;
using TrackSet = std::vector<TrackFrame>;

struct GatePolicy {
  /// Minimum IoU for a match in the visible field of view.
  double iou_threshold = 0.1;
  /// Match on center distance instead of IoU everywhere.
  bool point_mode = false;
  double point_radius = 50.0;
  /// Partial field of view: ground truth outside [visible_lo, visible_hi]
  /// is gated on center distance with the radius scaled by blind_factor.
  bool partial_fov = false;
  double visible_lo = 0.0;
  double visible_hi = 0.0;
  double blind_factor = 2.0;
};

double iou(const Vec4& a, const Vec4& b);

/// Assignment cost of a (gt, est) pair, or +infinity outside the gate.
/// IoU gates cost 1 - IoU, point gates cost distance / radius.
double gate_cost(const TrackItem& gt, const TrackItem& est, const GatePolicy& policy);

/// Correspondences carried from frame to frame.
struct MatchState {
  std::map<int, int> current;       // gt id -> est id matched in the previous frame
  std::map<int, int> last_partner;  // gt id -> est id of its most recent match
};

struct FrameEvents {
  int gt = 0;
  int fp = 0;
  int fn = 0;
  int ids = 0;
  std::vector<int> gt_ids;
  std::vector<std::pair<int, int>> matches;  // (gt id, est id)
  std::vector<std::pair<int, int>> switches;  // (gt id, new est id)
};

/// CLEAR-MOT matching of one frame: keeps last frame's correspondences that
/// are still inside the gate, then matches the rest optimally. Updates
/// `state`.
FrameEvents match_frame(const TrackFrame& gt, const TrackFrame& est, const GatePolicy& policy,
                        MatchState& state);

struct MotReport {
  double mota = 0.0;
  long fp = 0;
  long fn = 0;
  long ids = 0;
  long gt = 0;
  double mt = 0.0;  // percent of ground-truth trajectories
  double ml = 0.0;
  int trajectories = 0;
  std::vector<FrameEvents> frames;
};

/// 100 (1 - (fp + fn + ids) / gt). Throws UndefinedScoreError when gt == 0.
double mota_from_counts(long fp, long fn, long ids, long gt);

/// Aggregates per-frame events into MOTA and MT/ML (coverage > 80% / < 20%).
MotReport mota(const std::vector<FrameEvents>& events);

/// Runs match_frame over aligned frame sequences and aggregates.
MotReport evaluate_mot(const TrackSet& gt, const TrackSet& est, const GatePolicy& policy);

/// Maps every estimated id to the ground-truth id it was matched with most
/// often (ties: lower gt id).
std::map<int, int> majority_correspondence(const std::vector<FrameEvents>& events);

}  // namespace vavit::metrics
