// core/src/avmap/mapping.cpp

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

#include "vavit/avmap/mapping.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vavit/errors.hpp"

namespace vavit::avmap {

namespace {

// Below this log-density every region term underflows in linear space.
const double kLogUnderflow = std::log(std::numeric_limits<double>::min());

}  // namespace

double SubbandMapping::log_clutter_volume() const {
  if (feature_lo.size() != feature_dim() || feature_hi.size() != feature_dim()) {
    throw InputError("SubbandMapping: clutter box has the wrong dimension");
  }
  return (feature_hi - feature_lo).array().log().sum();
}

void SubbandMapping::validate() const {
  if (experts.empty()) throw InputError("SubbandMapping: no experts");
  if (J < 1) throw InputError("SubbandMapping: J must be >= 1");
  const int d = feature_dim();
  double total = 0.0;
  for (std::size_t r = 0; r < experts.size(); ++r) {
    const auto& e = experts[r];
    const std::string tag = "expert " + std::to_string(r);
    if (e.L.rows() != d || e.L.cols() != 2 || e.l.size() != d || e.Sigma.rows() != d ||
        e.Sigma.cols() != d) {
      throw InputError("SubbandMapping: " + tag + " has inconsistent dimensions");
    }
    if (!(e.pi >= 0.0)) throw InputError("SubbandMapping: " + tag + " has negative weight");
    if (Eigen::LLT<Eigen::MatrixXd>(e.Sigma).info() != Eigen::Success) {
      throw InputError("SubbandMapping: " + tag + " Sigma is not SPD");
    }
    if (Eigen::LLT<Mat2>(e.Omega).info() != Eigen::Success) {
      throw InputError("SubbandMapping: " + tag + " Omega is not SPD");
    }
    total += e.pi;
  }
  if (std::abs(total - 1.0) > 1e-8) throw InputError("SubbandMapping: weights do not sum to 1");
  if (feature_lo.size() != d || feature_hi.size() != d ||
      !((feature_hi - feature_lo).array() > 0.0).all()) {
    throw InputError("SubbandMapping: clutter box is empty or has the wrong dimension");
  }
}

void AudioMappingModel::validate() const {
  if (subbands.empty()) throw InputError("AudioMappingModel: no sub-bands");
  const int j = J();
  const int r = R();
  for (std::size_t k = 0; k < subbands.size(); ++k) {
    subbands[k].validate();
    if (mode == MappingMode::kLearned &&
        (subbands[k].J != j || subbands[k].num_experts() != r)) {
      throw InputError("AudioMappingModel: sub-band " + std::to_string(k) +
                       " disagrees on J or R");
    }
  }
  if (mode == MappingMode::kDoaPoint && !(sigma_doa > 0.0)) {
    throw InputError("AudioMappingModel: sigma_doa must be positive in doa-point mode");
  }
}

double affine_loglik(const SubbandMapping& m, const Eigen::Ref<const Eigen::VectorXd>& g,
                     const Vec2& x, std::size_t r) {
  if (r >= m.experts.size()) {
    throw InputError("affine_loglik: expert index " + std::to_string(r) + " out of range");
  }
  const auto& e = m.experts[r];
  if (g.size() != e.l.size()) throw InputError("affine_loglik: feature dimension mismatch");
  Eigen::VectorXd pred = e.L * x + e.l;
  return gaussian_logpdf(g, pred, e.Sigma, "Sigma");
}

RegionPosterior region_posterior(const SubbandMapping& m, const Vec2& x) {
  const int R = m.num_experts();
  if (R == 0) throw InputError("region_posterior: no experts");
  Eigen::VectorXd logw(R);
  for (int r = 0; r < R; ++r) {
    const auto& e = m.experts[r];
    const double lp = e.pi > 0.0 ? std::log(e.pi) : -std::numeric_limits<double>::infinity();
    logw(r) = lp + gaussian_logpdf(x, e.nu, e.Omega, "Omega");
  }
  RegionPosterior out;
  out.weights.resize(R);
  const double mx = logw.maxCoeff();
  if (!(mx > kLogUnderflow)) {
    for (int r = 0; r < R; ++r) out.weights(r) = m.experts[r].pi;
    out.degenerate = true;
    return out;
  }
  std::vector<double> terms(logw.data(), logw.data() + R);
  const double lse = log_sum_exp(terms);
  for (int r = 0; r < R; ++r) out.weights(r) = std::exp(logw(r) - lse);
  return out;
}

Eigen::VectorXd predict_feature(const SubbandMapping& m, const Vec2& x) {
  const RegionPosterior post = region_posterior(m, x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m.feature_dim());
  for (int r = 0; r < m.num_experts(); ++r) {
    const auto& e = m.experts[r];
    g += post.weights(r) * (e.L * x + e.l);
  }
  return g;
}

AudioMappingModel doa_point_model(double sigma, const Vec2& image_size, int K) {
  if (!(sigma > 0.0)) throw InputError("doa_point_model: sigma must be positive");
  if (K < 1) throw InputError("doa_point_model: K must be >= 1");
  AffineExpert e;
  e.L = Eigen::MatrixXd::Identity(2, 2);
  e.l = Eigen::VectorXd::Zero(2);
  e.Sigma = sigma * sigma * Eigen::MatrixXd::Identity(2, 2);
  e.nu = 0.5 * image_size;
  e.Omega = 1e12 * Mat2::Identity();
  e.pi = 1.0;

  SubbandMapping band;
  band.J = 1;
  band.experts = {e};
  band.feature_lo = Eigen::VectorXd::Zero(2);
  band.feature_hi = image_size;

  AudioMappingModel model;
  model.mode = MappingMode::kDoaPoint;
  model.sigma_doa = sigma;
  model.subbands.assign(static_cast<std::size_t>(K), band);
  return model;
}

}  // namespace vavit::avmap
