// vavit/gaussian.hpp

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

#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace vavit {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat46 = Eigen::Matrix<double, 4, 6>;
using Mat26 = Eigen::Matrix<double, 2, 6>;

inline constexpr int kStateDim = 6;

// Kinematic state layout: box center (0,1), box size (2,3), velocity (4,5).
// Pixels and pixels/frame.
inline Vec6 make_state(const Vec2& position, const Vec2& size, const Vec2& velocity) {
  Vec6 s;
  s << position, size, velocity;
  return s;
}
inline Vec2 position_of(const Vec6& s) { return s.head<2>(); }
inline Vec2 size_of(const Vec6& s) { return s.segment<2>(2); }
inline Vec2 velocity_of(const Vec6& s) { return s.tail<2>(); }

/// Selects (center, size) from a state: (I4 0).
Mat46 box_projection();
/// Selects the center from a state: (I2 0).
Mat26 position_projection();
/// First-order transition: position += velocity; size and velocity constant.
Mat6 constant_velocity_transition();

/// Gaussian belief over the kinematic state.
struct GaussianBelief {
  Vec6 mean = Vec6::Zero();
  Mat6 cov = Mat6::Identity();

  /// Throws NumericError if the covariance is not symmetric (1e-10 relative)
  /// or not positive definite, or if any entry is non-finite.
  void validate() const;
};

struct DynamicsModel {
  Mat6 transition = constant_velocity_transition();
  Mat6 process_cov = Mat6::Identity();

  DynamicsModel() = default;
  explicit DynamicsModel(const Mat6& lambda) : process_cov(lambda) {}
};

/// log N(v; mean, cov) via a Cholesky factorization. `label` names the
/// covariance in the error message when it is not SPD.
double gaussian_logpdf(const Eigen::Ref<const Eigen::VectorXd>& v,
                       const Eigen::Ref<const Eigen::VectorXd>& mean,
                       const Eigen::Ref<const Eigen::MatrixXd>& cov,
                       std::string_view label = "cov");

/// Clips the eigenvalues of the symmetric part of `m` from below at `eps`.
/// Matrices whose smallest eigenvalue is already >= eps (up to rounding) are
/// returned symmetrized but otherwise untouched, which makes the projection
/// idempotent. `clipped`, when given, is set to whether any eigenvalue moved.
Eigen::MatrixXd spd_project(const Eigen::Ref<const Eigen::MatrixXd>& m, double eps = 1e-6,
                            bool* clipped = nullptr);
Mat6 spd_project6(const Mat6& m, double eps = 1e-6, bool* clipped = nullptr);

/// exp(-lambda * (1 - sum_d sqrt(u_d h_d))) for two points on the simplex.
double bhattacharyya_likelihood(const Eigen::Ref<const Eigen::VectorXd>& u,
                                const Eigen::Ref<const Eigen::VectorXd>& h, double lambda);
/// Logarithm of the above without input validation; for inner loops.
double bhattacharyya_log_likelihood_unchecked(const Eigen::Ref<const Eigen::VectorXd>& u,
                                              const Eigen::Ref<const Eigen::VectorXd>& h,
                                              double lambda);

/// N(D mean, D cov D^T + Lambda).
GaussianBelief predict_belief(const GaussianBelief& prev, const DynamicsModel& dyn);

/// Reusable Cholesky factor of a fixed covariance for repeated density
/// evaluations.
class CholeskyGaussian {
 public:
  CholeskyGaussian() = default;
  explicit CholeskyGaussian(const Eigen::MatrixXd& cov, std::string_view label = "cov");

  int dim() const { return static_cast<int>(llt_.rows()); }
  /// log N(v; mean, cov).
  double log_density(const Eigen::Ref<const Eigen::VectorXd>& v,
                     const Eigen::Ref<const Eigen::VectorXd>& mean) const;
  /// cov^{-1} x.
  Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd solve_matrix(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  double log_det() const { return log_det_; }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_det_ = 0.0;
};

/// log(sum_i exp(x_i)) summed in ascending order, so the result does not
/// depend on the order of the inputs.
double log_sum_exp(std::span<const double> x);

}  // namespace vavit
