// vavit/tracker/birth.hpp

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

#include <deque>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vavit/gaussian.hpp"
#include "vavit/observations.hpp"
#include "vavit/tracker/config.hpp"

namespace vavit::tracker {

/// Log marginal likelihood of y_1..y_T under the linear-Gaussian model
///   x_1 ~ N(m0, P0),  x_{t+1} = F x_t + N(0, Q),  y_t = H x_t + N(0, R_t),
/// by the prediction-error decomposition. Dimensions are arbitrary.
/// `terminal`, when given, receives the filtered (= smoothed) belief of x_T.
double linear_gaussian_log_marginal(std::span<const Eigen::VectorXd> ys,
                                    std::span<const Eigen::MatrixXd> Rs,
                                    const Eigen::MatrixXd& F, const Eigen::MatrixXd& Q,
                                    const Eigen::MatrixXd& H, const Eigen::VectorXd& m0,
                                    const Eigen::MatrixXd& P0,
                                    std::pair<Eigen::VectorXd, Eigen::MatrixXd>* terminal = nullptr);

struct SequenceFit {
  double log_likelihood = 0.0;
  GaussianBelief terminal;
};

/// Marginal likelihood of a box sequence under the constant-velocity model.
/// The initial state prior is centered on the last box (zero velocity) with
/// covariance prior_cov_scale * I. Requires exactly B+1 boxes.
SequenceFit fit_sequence(std::span<const Vec4> seq, std::span<const Mat4> phis,
                         const DynamicsModel& dyn, double prior_cov_scale, int B);

double sequence_marginal_likelihood(std::span<const Vec4> seq, std::span<const Mat4> phis,
                                    const DynamicsModel& dyn, double prior_cov_scale, int B);

/// Visual observations that the E-Z step left with the clutter hypothesis,
/// for the last B+1 frames.
class BirthPool {
 public:
  explicit BirthPool(int window = 3) : window_(window) {}

  void push(std::vector<VisualObservation> frame);
  bool full() const { return static_cast<int>(frames_.size()) == window_ + 1; }
  int window() const { return window_; }
  const std::deque<std::vector<VisualObservation>>& frames() const { return frames_; }
  std::deque<std::vector<VisualObservation>>& frames() { return frames_; }
  void clear() { frames_.clear(); }

 private:
  int window_;
  std::deque<std::vector<VisualObservation>> frames_;
};

struct BirthCandidate {
  std::vector<int> indices;  // observation index in each pool frame, oldest first
  SequenceFit fit;
  Eigen::VectorXd appearance;
};

/// Links pool observations into sequences by greedy nearest-neighbour
/// matching from the oldest frame forward, center distance gated by
/// config.birth_gate. Ties go to the smaller distance, then the lower index.
std::vector<std::vector<int>> link_sequences(const BirthPool& pool, double gate);

/// Scores every linked sequence, accepts those above config.birth_threshold
/// in decreasing likelihood order, and removes the consumed observations
/// from the pool. Returns the accepted candidates.
std::vector<BirthCandidate> birth_scan(BirthPool& pool, const TrackerConfig& config);

}  // namespace vavit::tracker
