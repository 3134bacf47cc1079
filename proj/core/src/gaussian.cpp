// core/src/gaussian.cpp

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

#include "vavit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vavit/errors.hpp"

namespace vavit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)

bool all_finite(const Eigen::Ref<const Eigen::MatrixXd>& m) { return m.allFinite(); }

}  // namespace

Mat46 box_projection() {
  Mat46 p = Mat46::Zero();
  p.leftCols<4>().setIdentity();
  return p;
}

Mat26 position_projection() {
  Mat26 p = Mat26::Zero();
  p.leftCols<2>().setIdentity();
  return p;
}

Mat6 constant_velocity_transition() {
  Mat6 d = Mat6::Identity();
  d(0, 4) = 1.0;
  d(1, 5) = 1.0;
  return d;
}

void GaussianBelief::validate() const {
  if (!mean.allFinite() || !cov.allFinite()) {
    throw NumericError("GaussianBelief: non-finite mean or covariance");
  }
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericError("GaussianBelief: covariance is not symmetric");
  }
  Eigen::LLT<Mat6> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericError("GaussianBelief: covariance is not positive definite");
  }
}

CholeskyGaussian::CholeskyGaussian(const Eigen::MatrixXd& cov, std::string_view label) {
  if (cov.rows() != cov.cols() || !all_finite(cov)) {
    throw NumericError("covariance '" + std::string(label) + "' is not a finite square matrix");
  }
  llt_.compute(cov);
  if (llt_.info() != Eigen::Success) {
    throw NumericError("covariance '" + std::string(label) + "' is not positive definite");
  }
  log_det_ = 2.0 * llt_.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double CholeskyGaussian::log_density(const Eigen::Ref<const Eigen::VectorXd>& v,
                                     const Eigen::Ref<const Eigen::VectorXd>& mean) const {
  Eigen::VectorXd z = v - mean;
  llt_.matrixL().solveInPlace(z);
  return -0.5 * (static_cast<double>(z.size()) * kLog2Pi + log_det_ + z.squaredNorm());
}

Eigen::VectorXd CholeskyGaussian::solve(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return llt_.solve(x);
}

Eigen::MatrixXd CholeskyGaussian::solve_matrix(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  return llt_.solve(x);
}

double gaussian_logpdf(const Eigen::Ref<const Eigen::VectorXd>& v,
                       const Eigen::Ref<const Eigen::VectorXd>& mean,
                       const Eigen::Ref<const Eigen::MatrixXd>& cov, std::string_view label) {
  if (v.size() != mean.size() || cov.rows() != v.size() || cov.cols() != v.size()) {
    throw InputError("gaussian_logpdf: dimension mismatch for '" + std::string(label) + "'");
  }
  return CholeskyGaussian(cov, label).log_density(v, mean);
}

Eigen::MatrixXd spd_project(const Eigen::Ref<const Eigen::MatrixXd>& m, double eps,
                            bool* clipped) {
  if (m.rows() != m.cols()) throw InputError("spd_project: matrix is not square");
  if (!all_finite(m)) throw InputError("spd_project: non-finite entries");
  if (!(eps > 0.0)) throw InputError("spd_project: eps must be positive");
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& ev = es.eigenvalues();
  // Eigenvalues carry rounding error proportional to the matrix norm; treat
  // anything within that band of eps as already feasible.
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() >= eps - slack) {
    if (clipped) *clipped = false;
    return sym;
  }
  Eigen::VectorXd fixed = ev.cwiseMax(eps);
  Eigen::MatrixXd out = es.eigenvectors() * fixed.asDiagonal() * es.eigenvectors().transpose();
  if (clipped) *clipped = true;
  return 0.5 * (out + out.transpose());
}

Mat6 spd_project6(const Mat6& m, double eps, bool* clipped) {
  return spd_project(m, eps, clipped);
}

double bhattacharyya_log_likelihood_unchecked(const Eigen::Ref<const Eigen::VectorXd>& u,
                                              const Eigen::Ref<const Eigen::VectorXd>& h,
                                              double lambda) {
  const double bc = (u.array() * h.array()).sqrt().sum();
  return -lambda * (1.0 - bc);
}

double bhattacharyya_likelihood(const Eigen::Ref<const Eigen::VectorXd>& u,
                                const Eigen::Ref<const Eigen::VectorXd>& h, double lambda) {
  if (u.size() != h.size() || u.size() == 0) {
    throw InputError("bhattacharyya_likelihood: descriptor dimensions differ");
  }
  if (!(lambda > 0.0)) throw InputError("bhattacharyya_likelihood: lambda must be positive");
  for (const auto* x : {&u, &h}) {
    if (!x->allFinite() || x->minCoeff() < 0.0 || std::abs(x->sum() - 1.0) > 1e-8) {
      throw InputError("bhattacharyya_likelihood: descriptor is not on the probability simplex");
    }
  }
  // Clamp: the coefficient can exceed 1 by rounding when u == h.
  const double bc = std::min(1.0, (u.array() * h.array()).sqrt().sum());
  return std::exp(-lambda * (1.0 - bc));
}

GaussianBelief predict_belief(const GaussianBelief& prev, const DynamicsModel& dyn) {
  GaussianBelief out;
  out.mean = dyn.transition * prev.mean;
  Mat6 cov = dyn.transition * prev.cov * dyn.transition.transpose() + dyn.process_cov;
  out.cov = 0.5 * (cov + cov.transpose());
  return out;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const double mx = v.back();
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double e : v) s += std::exp(e - mx);
  return mx + std::log(s);
}

}  // namespace vavit
