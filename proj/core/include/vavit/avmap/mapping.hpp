// vavit/avmap/mapping.hpp

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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "vavit/gaussian.hpp"

namespace vavit::avmap {

/// One piecewise-affine expert of a sub-band mapping:
///   x | r ~ N(nu, Omega),  g | x, r ~ N(L x + l, Sigma),  p(r) = pi.
struct AffineExpert {
  Eigen::MatrixXd L;      // 2J x 2
  Eigen::VectorXd l;      // 2J
  Eigen::MatrixXd Sigma;  // 2J x 2J, SPD
  Vec2 nu = Vec2::Zero();
  Mat2 Omega = Mat2::Identity();
  double pi = 1.0;
};

/// Mixture of R affine experts for one frequency sub-band. `feature_lo` and
/// `feature_hi` bound the support of the uniform clutter density for g.
struct SubbandMapping {
  std::vector<AffineExpert> experts;
  int J = 1;
  Eigen::VectorXd feature_lo;
  Eigen::VectorXd feature_hi;

  int feature_dim() const { return 2 * J; }
  int num_experts() const { return static_cast<int>(experts.size()); }
  /// log of the volume of [feature_lo, feature_hi].
  double log_clutter_volume() const;
  /// Throws InputError on shape mismatches, non-SPD covariances, or weights
  /// that do not sum to one.
  void validate() const;
};

enum class MappingMode { kLearned, kDoaPoint };

struct AudioMappingModel {
  MappingMode mode = MappingMode::kLearned;
  std::vector<SubbandMapping> subbands;
  double sigma_doa = 0.0;  // pixels; doa-point mode only

  int K() const { return static_cast<int>(subbands.size()); }
  int J() const { return subbands.empty() ? 0 : subbands.front().J; }
  int R() const { return subbands.empty() ? 0 : subbands.front().num_experts(); }
  void validate() const;
};

/// log N(g; L_r x + l_r, Sigma_r).
double affine_loglik(const SubbandMapping& m, const Eigen::Ref<const Eigen::VectorXd>& g,
                     const Vec2& x, std::size_t r);

struct RegionPosterior {
  Eigen::VectorXd weights;
  /// True when every region density underflowed at x; `weights` is then pi.
  bool degenerate = false;
};

/// p(r | x) = pi_r N(x; nu_r, Omega_r) / sum_i pi_i N(x; nu_i, Omega_i).
RegionPosterior region_posterior(const SubbandMapping& m, const Vec2& x);

/// E[g | x] = sum_r p(r | x) (L_r x + l_r).
Eigen::VectorXd predict_feature(const SubbandMapping& m, const Vec2& x);

/// Point-observation model for DOAs projected on the image plane: K
/// identical sub-bands with a single expert g = x + noise(sigma^2 I) and one
/// flat region covering the image.
AudioMappingModel doa_point_model(double sigma, const Vec2& image_size = Vec2(1920.0, 1200.0),
                                  int K = 4);

}  // namespace vavit::avmap
