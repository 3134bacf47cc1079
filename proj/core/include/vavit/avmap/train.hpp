// vavit/avmap/train.hpp

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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vavit/avmap/mapping.hpp"

namespace vavit::avmap {

/// A source position and the K x 2J matrix of sub-band features it produced.
struct TrainingPair {
  Vec2 x = Vec2::Zero();
  Eigen::MatrixXd g;
};

struct TrainingOptions {
  int R = 3;
  int max_iter = 200;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  double cov_floor = 1e-9;
};

struct SubbandTrainingReport {
  std::vector<double> loglik_trace;  // mean per-sample joint log-likelihood
  int iterations = 0;
  bool converged = false;
  int regularized = 0;
  /// RMS of g - E[g | x] over the training pairs and feature coordinates.
  double residual_rms = 0.0;
};

struct TrainingResult {
  AudioMappingModel model;
  std::vector<SubbandTrainingReport> subbands;

  /// Total number of covariance regularizations across sub-bands.
  int warning_count() const;
};

/// Conditions a joint Gaussian over (x; g) into an affine expert:
/// L = C_gx C_xx^-1, l = m_g - L m_x, Sigma = C_gg - C_gx C_xx^-1 C_xg.
AffineExpert expert_from_joint(double weight, const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& cov);

/// Fits one mixture of R affine experts per sub-band by EM on the joint
/// vectors (x; g_k). Sub-bands are independent and trained in order.
TrainingResult train_mapping(std::span<const TrainingPair> pairs, const TrainingOptions& options);

}  // namespace vavit::avmap
