// core/src/metrics/clear_mot.cpp

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

#include "vavit/metrics/clear_mot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "vavit/errors.hpp"
#include "vavit/metrics/assignment.hpp"

namespace vavit::metrics {

double iou(const Vec4& a, const Vec4& b) {
  const double ax0 = a(0) - 0.5 * a(2), ax1 = a(0) + 0.5 * a(2);
  const double ay0 = a(1) - 0.5 * a(3), ay1 = a(1) + 0.5 * a(3);
  const double bx0 = b(0) - 0.5 * b(2), bx1 = b(0) + 0.5 * b(2);
  const double by0 = b(1) - 0.5 * b(3), by1 = b(1) + 0.5 * b(3);
  const double iw = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double ih = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = iw * ih;
  const double uni = std::max(0.0, a(2) * a(3)) + std::max(0.0, b(2) * b(3)) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double gate_cost(const TrackItem& gt, const TrackItem& est, const GatePolicy& policy) {
  const double inf = std::numeric_limits<double>::infinity();
  const double x = gt.box(0);
  const bool blind = policy.partial_fov && (x < policy.visible_lo || x > policy.visible_hi);
  if (policy.point_mode || blind) {
    const double radius = policy.point_radius * (blind ? policy.blind_factor : 1.0);
    const double d = (gt.box.head<2>() - est.box.head<2>()).norm();
    return d <= radius ? d / radius : inf;
  }
  const double o = iou(gt.box, est.box);
  return o >= policy.iou_threshold ? 1.0 - o : inf;
}

FrameEvents match_frame(const TrackFrame& gt, const TrackFrame& est, const GatePolicy& policy,
                        MatchState& state) {
  FrameEvents ev;
  ev.gt = static_cast<int>(gt.size());
  for (const auto& g : gt) ev.gt_ids.push_back(g.id);
  std::vector<bool> gt_done(gt.size(), false), est_done(est.size(), false);

  for (std::size_t i = 0; i < gt.size(); ++i) {
    auto it = state.current.find(gt[i].id);
    if (it == state.current.end()) continue;
    for (std::size_t j = 0; j < est.size(); ++j) {
      if (est_done[j] || est[j].id != it->second) continue;
      if (std::isfinite(gate_cost(gt[i], est[j], policy))) {
        gt_done[i] = est_done[j] = true;
        ev.matches.emplace_back(gt[i].id, est[j].id);
      }
      break;
    }
  }

  std::vector<int> gi, ej;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!gt_done[i]) gi.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < est.size(); ++j) {
    if (!est_done[j]) ej.push_back(static_cast<int>(j));
  }
  Eigen::MatrixXd cost(gi.size(), ej.size());
  for (std::size_t a = 0; a < gi.size(); ++a) {
    for (std::size_t b = 0; b < ej.size(); ++b) cost(a, b) = gate_cost(gt[gi[a]], est[ej[b]], policy);
  }
  const std::vector<int> assign = solve_assignment(cost);
  for (std::size_t a = 0; a < gi.size(); ++a) {
    if (assign[a] < 0) continue;
    const auto& g = gt[gi[a]];
    const auto& e = est[ej[assign[a]]];
    gt_done[gi[a]] = est_done[ej[assign[a]]] = true;
    ev.matches.emplace_back(g.id, e.id);
    auto last = state.last_partner.find(g.id);
    if (last != state.last_partner.end() && last->second != e.id) {
      ++ev.ids;
      ev.switches.emplace_back(g.id, e.id);
    }
  }

  ev.fn = static_cast<int>(std::count(gt_done.begin(), gt_done.end(), false));
  ev.fp = static_cast<int>(std::count(est_done.begin(), est_done.end(), false));
  std::sort(ev.matches.begin(), ev.matches.end());
  state.current.clear();
  for (const auto& [g, e] : ev.matches) {
    state.current[g] = e;
    state.last_partner[g] = e;
  }
  return ev;
}

double mota_from_counts(long fp, long fn, long ids, long gt) {
  if (gt <= 0) throw UndefinedScoreError("MOTA is undefined without ground-truth objects");
  return 100.0 * static_cast<double>(gt - (fp + fn + ids)) / static_cast<double>(gt);
}

MotReport mota(const std::vector<FrameEvents>& events) {
  MotReport r;
  std::map<int, int> present, covered;
  for (const auto& ev : events) {
    r.fp += ev.fp;
    r.fn += ev.fn;
    r.ids += ev.ids;
    r.gt += ev.gt;
    for (int g : ev.gt_ids) ++present[g];
    for (const auto& m : ev.matches) ++covered[m.first];
  }
  r.mota = mota_from_counts(r.fp, r.fn, r.ids, r.gt);
  int mt = 0, ml = 0;
  for (const auto& [id, n] : present) {
    const double cov = static_cast<double>(covered[id]) / n;
    if (cov > 0.8) ++mt;
    if (cov < 0.2) ++ml;
  }
  r.trajectories = static_cast<int>(present.size());
  if (r.trajectories > 0) {
    r.mt = 100.0 * mt / r.trajectories;
    r.ml = 100.0 * ml / r.trajectories;
  }
  r.frames = events;
  return r;
}

MotReport evaluate_mot(const TrackSet& gt, const TrackSet& est, const GatePolicy& policy) {
  if (gt.size() != est.size()) {
    throw InputError("ground truth and estimates cover different frame ranges");
  }
  MatchState state;
  std::vector<FrameEvents> events;
  for (std::size_t t = 0; t < gt.size(); ++t) {
    events.push_back(match_frame(gt[t], est[t], policy, state));
  }
  return mota(events);
}

std::map<int, int> majority_correspondence(const std::vector<FrameEvents>& events) {
  std::map<int, std::map<int, int>> counts;  // est -> gt -> frames
  for (const auto& ev : events) {
    for (const auto& [g, e] : ev.matches) ++counts[e][g];
  }
  std::map<int, int> out;
  for (const auto& [e, by_gt] : counts) {
    int best = 0, best_n = -1;
    for (const auto& [g, n] : by_gt) {
      if (n > best_n) {
        best = g;
        best_n = n;
      }
    }
    out[e] = best;
  }
  return out;
}

}  // namespace vavit::metrics
