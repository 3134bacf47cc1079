// core/src/metrics/ospa.cpp

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

#include "vavit/metrics/ospa.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vavit/errors.hpp"
#include "vavit/metrics/assignment.hpp"

namespace vavit::metrics {

double ospa_frame(const TrackFrame& x, const TrackFrame& y, const OspaParams& params) {
  if (!(params.p >= 1.0) || !(params.c > 0.0)) {
    throw InputError("OSPA requires p >= 1 and c > 0");
  }
  const TrackFrame& small = x.size() <= y.size() ? x : y;
  const TrackFrame& large = x.size() <= y.size() ? y : x;
  const std::size_t m = small.size();
  const std::size_t n = large.size();
  if (n == 0) return 0.0;
  Eigen::MatrixXd cost(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = (small[i].box.head<2>() - large[j].box.head<2>()).norm() +
                       (small[i].id != large[j].id ? params.alpha_label : 0.0);
      cost(i, j) = std::pow(std::min(params.c, d), params.p);
    }
  }
  const std::vector<int> assign = solve_assignment(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += cost(i, assign[i]);
  total += std::pow(params.c, params.p) * static_cast<double>(n - m);
  return std::pow(total / static_cast<double>(n), 1.0 / params.p);
}

OspaResult ospa_t(const TrackSet& gt, const TrackSet& est, const OspaParams& params) {
  if (gt.size() != est.size()) {
    throw InputError("ground truth and estimates cover different frame ranges");
  }
  const std::size_t T = gt.size();
  std::set<int> gt_ids, est_ids;
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& g : gt[t]) gt_ids.insert(g.id);
    for (const auto& e : est[t]) est_ids.insert(e.id);
  }
  const std::vector<int> gv(gt_ids.begin(), gt_ids.end());
  const std::vector<int> ev(est_ids.begin(), est_ids.end());

  // Time-summed cutoff distance between every pair of tracks; frames where
  // only one of the two exists cost c.
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(gv.size(), ev.size());
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t a = 0; a < gv.size(); ++a) {
      const TrackItem* g = nullptr;
      for (const auto& it : gt[t]) {
        if (it.id == gv[a]) g = &it;
      }
      for (std::size_t b = 0; b < ev.size(); ++b) {
        const TrackItem* e = nullptr;
        for (const auto& it : est[t]) {
          if (it.id == ev[b]) e = &it;
        }
        if (g == nullptr && e == nullptr) continue;
        if (g != nullptr && e != nullptr) {
          cost(a, b) += std::min(params.c, (g->box.head<2>() - e->box.head<2>()).norm());
        } else {
          cost(a, b) += params.c;
        }
      }
    }
  }
  const std::vector<int> assign = solve_assignment(cost);

  OspaResult out;
  int fresh = gv.empty() ? 1 : gv.back() + 1;
  std::vector<bool> taken(ev.size(), false);
  for (std::size_t a = 0; a < gv.size(); ++a) {
    if (assign[a] >= 0) {
      out.labels[ev[assign[a]]] = gv[a];
      taken[assign[a]] = true;
    }
  }
  for (std::size_t b = 0; b < ev.size(); ++b) {
    if (!taken[b]) out.labels[ev[b]] = fresh++;
  }

  double sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    TrackFrame relabeled = est[t];
    for (auto& it : relabeled) it.id = out.labels.at(it.id);
    out.per_frame.push_back(ospa_frame(gt[t], relabeled, params));
    sum += out.per_frame.back();
  }
  out.mean = T > 0 ? sum / static_cast<double>(T) : 0.0;
  return out;
}

}  // namespace vavit::metrics
