// core/src/tracker/birth.cpp

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

#include "vavit/tracker/birth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vavit/errors.hpp"

namespace vavit::tracker {

double linear_gaussian_log_marginal(std::span<const Eigen::VectorXd> ys,
                                    std::span<const Eigen::MatrixXd> Rs,
                                    const Eigen::MatrixXd& F, const Eigen::MatrixXd& Q,
                                    const Eigen::MatrixXd& H, const Eigen::VectorXd& m0,
                                    const Eigen::MatrixXd& P0,
                                    std::pair<Eigen::VectorXd, Eigen::MatrixXd>* terminal) {
  if (ys.size() != Rs.size()) throw InputError("one noise covariance per observation is required");
  Eigen::VectorXd m = m0;
  Eigen::MatrixXd P = P0;
  double total = 0.0;
  for (std::size_t t = 0; t < ys.size(); ++t) {
    if (t > 0) {
      m = F * m;
      P = F * P * F.transpose() + Q;
    }
    const Eigen::VectorXd innov = ys[t] - H * m;
    Eigen::MatrixXd S = H * P * H.transpose() + Rs[t];
    S = 0.5 * (S + S.transpose());
    const CholeskyGaussian sg(S, "innovation covariance");
    total += sg.log_density(ys[t], H * m);
    const Eigen::MatrixXd PHt = P * H.transpose();
    const Eigen::MatrixXd K = sg.solve_matrix(PHt.transpose()).transpose();
    m += K * innov;
    P -= K * PHt.transpose();
    P = 0.5 * (P + P.transpose());
  }
  if (terminal != nullptr) *terminal = {m, P};
  return total;
}

SequenceFit fit_sequence(std::span<const Vec4> seq, std::span<const Mat4> phis,
                         const DynamicsModel& dyn, double prior_cov_scale, int B) {
  if (static_cast<int>(seq.size()) != B + 1 || phis.size() != seq.size()) {
    throw InputError("birth sequence must hold exactly B+1 = " + std::to_string(B + 1) +
                     " boxes, got " + std::to_string(seq.size()));
  }
  std::vector<Eigen::VectorXd> ys(seq.begin(), seq.end());
  std::vector<Eigen::MatrixXd> rs(phis.begin(), phis.end());
  const Vec4& last = seq.back();
  Vec6 m0;
  m0 << last, 0.0, 0.0;
  const Mat6 p0 = prior_cov_scale * Mat6::Identity();
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> term;
  SequenceFit out;
  out.log_likelihood = linear_gaussian_log_marginal(ys, rs, dyn.transition, dyn.process_cov,
                                                    box_projection(), m0, p0, &term);
  out.terminal.mean = term.first;
  out.terminal.cov = term.second;
  return out;
}

double sequence_marginal_likelihood(std::span<const Vec4> seq, std::span<const Mat4> phis,
                                    const DynamicsModel& dyn, double prior_cov_scale, int B) {
  return fit_sequence(seq, phis, dyn, prior_cov_scale, B).log_likelihood;
}

void BirthPool::push(std::vector<VisualObservation> frame) {
  frames_.push_back(std::move(frame));
  while (static_cast<int>(frames_.size()) > window_ + 1) frames_.pop_front();
}

std::vector<std::vector<int>> link_sequences(const BirthPool& pool, double gate) {
  std::vector<std::vector<int>> out;
  const auto& frames = pool.frames();
  if (frames.empty()) return out;
  std::vector<std::vector<bool>> used(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) used[f].assign(frames[f].size(), false);

  for (std::size_t i0 = 0; i0 < frames.front().size(); ++i0) {
    std::vector<int> seq{static_cast<int>(i0)};
    Vec2 at = frames.front()[i0].v.head<2>();
    bool complete = true;
    for (std::size_t f = 1; f < frames.size(); ++f) {
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < frames[f].size(); ++j) {
        if (used[f][j]) continue;
        const double d = (frames[f][j].v.head<2>() - at).norm();
        if (d <= gate && d < best_d) {  // strict '<' keeps the lower index on ties
          best = static_cast<int>(j);
          best_d = d;
        }
      }
      if (best < 0) {
        complete = false;
        break;
      }
      seq.push_back(best);
      at = frames[f][best].v.head<2>();
    }
    if (!complete) continue;
    for (std::size_t f = 0; f < frames.size(); ++f) used[f][seq[f]] = true;
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<BirthCandidate> birth_scan(BirthPool& pool, const TrackerConfig& config) {
  std::vector<BirthCandidate> accepted;
  if (!pool.full()) return accepted;
  auto& frames = pool.frames();
  const DynamicsModel dyn(config.init_dynamics_cov());

  std::vector<BirthCandidate> cands;
  for (auto& seq : link_sequences(pool, config.birth_gate)) {
    std::vector<Vec4> boxes;
    std::vector<Mat4> phis;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      boxes.push_back(frames[f][seq[f]].v);
      phis.push_back(frames[f][seq[f]].Phi);
    }
    BirthCandidate c;
    c.fit = fit_sequence(boxes, phis, dyn, config.birth_prior_cov_scale, config.birth_window);
    c.appearance = frames.back()[seq.back()].u;
    c.indices = std::move(seq);
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    return a.fit.log_likelihood > b.fit.log_likelihood;
  });

  std::vector<std::vector<bool>> consumed(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) consumed[f].assign(frames[f].size(), false);
  for (auto& c : cands) {
    if (!(c.fit.log_likelihood > config.birth_threshold)) break;
    bool free = true;
    for (std::size_t f = 0; f < frames.size(); ++f) free = free && !consumed[f][c.indices[f]];
    if (!free) continue;
    for (std::size_t f = 0; f < frames.size(); ++f) consumed[f][c.indices[f]] = true;
    accepted.push_back(std::move(c));
  }

  for (std::size_t f = 0; f < frames.size(); ++f) {
    std::vector<VisualObservation> keep;
    for (std::size_t j = 0; j < frames[f].size(); ++j) {
      if (!consumed[f][j]) keep.push_back(std::move(frames[f][j]));
    }
    frames[f] = std::move(keep);
  }
  return accepted;
}

}  // namespace vavit::tracker
