// vavit/avmap/gmm.hpp

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
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace vavit::avmap {

struct GmmParams {
  Eigen::VectorXd weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covs;
};

struct GmmOptions {
  int components = 3;
  int max_iter = 200;
  /// Stop when the relative log-likelihood improvement drops below tol.
  double tol = 1e-8;
  std::uint64_t seed = 0;
  /// Eigenvalue floor for component covariances, in per-dimension
  /// standardized units.
  double cov_floor = 1e-9;
  /// Called after every E-step with the parameters that were just evaluated
  /// and their mean per-sample log-likelihood.
  std::function<void(int, const GmmParams&, double)> observer;
};

struct GmmFit {
  GmmParams params;
  /// Mean per-sample log-likelihood, one entry per evaluated parameter set.
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
  /// Number of covariance updates that needed eigenvalue clipping.
  int regularized = 0;
};

/// Full-covariance Gaussian mixture fitted by EM on the rows of `data`.
/// Initialization is farthest-point seeding (first center drawn from
/// `seed`) refined by a few Lloyd iterations on standardized data.
/// Throws TrainingError when the data cannot support the requested model or
/// the likelihood decreases without regularization having been applied.
GmmFit fit_gmm(const Eigen::MatrixXd& data, const GmmOptions& options);

}  // namespace vavit::avmap
