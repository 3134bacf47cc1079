// core/src/avmap/train.cpp

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

#include "vavit/avmap/train.hpp"

#include <cmath>
#include <string>

#include "vavit/avmap/gmm.hpp"
#include "vavit/errors.hpp"
#include "vavit/gaussian.hpp"

namespace vavit::avmap {

int TrainingResult::warning_count() const {
  int n = 0;
  for (const auto& s : subbands) n += s.regularized;
  return n;
}

AffineExpert expert_from_joint(double weight, const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& cov) {
  const Eigen::Index d = mean.size() - 2;
  if (d < 1 || cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw InputError("expert_from_joint: joint dimension mismatch");
  }
  const Mat2 cxx = cov.topLeftCorner<2, 2>();
  const Eigen::MatrixXd cgx = cov.bottomLeftCorner(d, 2);
  const Eigen::MatrixXd cgg = cov.bottomRightCorner(d, d);
  Eigen::LLT<Mat2> llt(cxx);
  if (llt.info() != Eigen::Success) throw TrainingError("expert_from_joint: C_xx is not SPD");

  AffineExpert e;
  e.pi = weight;
  e.nu = mean.head<2>();
  e.Omega = cxx;
  // L = C_gx C_xx^-1  <=>  L^T = C_xx^-1 C_xg
  e.L = llt.solve(cgx.transpose()).transpose();
  e.l = mean.tail(d) - e.L * e.nu;
  Eigen::MatrixXd sigma = cgg - e.L * cgx.transpose();
  const double floor = std::max(1e-12 * cgg.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  e.Sigma = spd_project(sigma, floor);
  return e;
}

TrainingResult train_mapping(std::span<const TrainingPair> pairs, const TrainingOptions& opt) {
  if (opt.R < 1) throw TrainingError("train_mapping: R must be >= 1");
  if (pairs.empty()) throw TrainingError("train_mapping: no training pairs");
  const Eigen::Index K = pairs.front().g.rows();
  const Eigen::Index d = pairs.front().g.cols();
  if (K < 1 || d < 2 || d % 2 != 0) {
    throw TrainingError("train_mapping: feature matrix must be K x 2J with K, J >= 1");
  }
  if (pairs.size() < static_cast<std::size_t>(10 * opt.R)) {
    throw TrainingError("train_mapping: need at least 10*R training pairs, got " +
                        std::to_string(pairs.size()));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].g.rows() != K || pairs[i].g.cols() != d) {
      throw TrainingError("train_mapping: pair " + std::to_string(i) +
                          " has a feature matrix of the wrong shape");
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
  TrainingResult result;
  result.model.mode = MappingMode::kLearned;
  for (Eigen::Index k = 0; k < K; ++k) {
    Eigen::MatrixXd joint(n, 2 + d);
    for (Eigen::Index i = 0; i < n; ++i) {
      joint.row(i).head<2>() = pairs[i].x.transpose();
      joint.row(i).tail(d) = pairs[i].g.row(k);
    }
    GmmOptions gopt;
    gopt.components = opt.R;
    gopt.max_iter = opt.max_iter;
    gopt.tol = opt.tol;
    gopt.seed = opt.seed;
    gopt.cov_floor = opt.cov_floor;
    const GmmFit fit = fit_gmm(joint, gopt);

    SubbandMapping band;
    band.J = static_cast<int>(d / 2);
    for (int r = 0; r < opt.R; ++r) {
      band.experts.push_back(
          expert_from_joint(fit.params.weights(r), fit.params.means[r], fit.params.covs[r]));
    }
    const Eigen::MatrixXd feats = joint.rightCols(d);
    band.feature_lo = feats.colwise().minCoeff().transpose();
    band.feature_hi = feats.colwise().maxCoeff().transpose();
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!(band.feature_hi(j) > band.feature_lo(j))) {
        band.feature_lo(j) -= 0.5e-6;
        band.feature_hi(j) += 0.5e-6;
      }
    }

    SubbandTrainingReport rep;
    rep.loglik_trace = fit.loglik_trace;
    rep.iterations = fit.iterations;
    rep.converged = fit.converged;
    rep.regularized = fit.regularized;
    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      ss += (feats.row(i).transpose() - predict_feature(band, pairs[i].x)).squaredNorm();
    }
    rep.residual_rms = std::sqrt(ss / static_cast<double>(n * d));

    result.model.subbands.push_back(std::move(band));
    result.subbands.push_back(std::move(rep));
  }
  return result;
}

}  // namespace vavit::avmap
