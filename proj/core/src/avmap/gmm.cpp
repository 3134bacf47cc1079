// core/src/avmap/gmm.cpp

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

#include "vavit/avmap/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "vavit/errors.hpp"
#include "vavit/gaussian.hpp"
#include "vavit/random.hpp"

namespace vavit::avmap {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr int kLloydIterations = 10;
constexpr double kMonotoneSlack = 1e-9;

struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
  double log_jacobian = 0.0;  // sum log scale
};

Standardizer make_standardizer(const Eigen::MatrixXd& x) {
  Standardizer s;
  s.mean = x.colwise().mean();
  Eigen::MatrixXd c = x.rowwise() - s.mean;
  s.scale = (c.array().square().colwise().sum() / static_cast<double>(x.rows())).sqrt();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 0.0)) s.scale(j) = 1.0;
  }
  s.log_jacobian = s.scale.array().log().sum();
  return s;
}

GmmParams to_original(const GmmParams& z, const Standardizer& s) {
  GmmParams out;
  out.weights = z.weights;
  const Eigen::VectorXd sc = s.scale.transpose();
  for (std::size_t r = 0; r < z.means.size(); ++r) {
    out.means.push_back(z.means[r].cwiseProduct(sc) + s.mean.transpose());
    out.covs.push_back(sc.asDiagonal() * z.covs[r] * sc.asDiagonal());
  }
  return out;
}

std::vector<Eigen::Index> farthest_point_seeds(const Eigen::MatrixXd& z, int k,
                                                std::uint64_t seed) {
  const Eigen::Index n = z.rows();
  Rng rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::vector<Eigen::Index> seeds{pick(rng)};
  Eigen::VectorXd dmin = (z.rowwise() - z.row(seeds[0])).rowwise().squaredNorm();
  while (static_cast<int>(seeds.size()) < k) {
    Eigen::Index best = 0;
    dmin.maxCoeff(&best);  // first maximal index on ties
    seeds.push_back(best);
    dmin = dmin.cwiseMin((z.rowwise() - z.row(best)).rowwise().squaredNorm());
  }
  return seeds;
}

Eigen::MatrixXd weighted_cov(const Eigen::MatrixXd& z, const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& w, double total) {
  Eigen::MatrixXd c = z.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (c.array().colwise() * w.array()).matrix().transpose() * c / total;
  return 0.5 * (cov + cov.transpose());
}

}  // namespace

GmmFit fit_gmm(const Eigen::MatrixXd& data, const GmmOptions& opt) {
  const Eigen::Index n = data.rows();
  const Eigen::Index dim = data.cols();
  const int k = opt.components;
  if (k < 1) throw TrainingError("fit_gmm: need at least one component");
  if (n < k || n == 0) {
    throw TrainingError("fit_gmm: " + std::to_string(n) + " samples for " + std::to_string(k) +
                        " components");
  }
  if (!data.allFinite()) throw TrainingError("fit_gmm: non-finite training data");

  const Standardizer stdz = make_standardizer(data);
  const Eigen::MatrixXd z = (data.rowwise() - stdz.mean).array().rowwise() / stdz.scale.array();

  GmmFit fit;
  auto floor_cov = [&](const Eigen::MatrixXd& c) {
    bool clipped = false;
    Eigen::MatrixXd out = spd_project(c, opt.cov_floor, &clipped);
    if (clipped) ++fit.regularized;
    return out;
  };

  // Hard initialization.
  std::vector<Eigen::Index> seeds = farthest_point_seeds(z, k, opt.seed);
  Eigen::MatrixXd centers(k, dim);
  for (int r = 0; r < k; ++r) centers.row(r) = z.row(seeds[r]);
  Eigen::VectorXi label(n);
  for (int it = 0; it < kLloydIterations; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      (centers.rowwise() - z.row(i)).rowwise().squaredNorm().minCoeff(&best);
      if (it == 0 || label(i) != best) changed = true;
      label(i) = static_cast<int>(best);
    }
    if (!changed) break;
    for (int r = 0; r < k; ++r) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(dim);
      int cnt = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (label(i) == r) {
          acc += z.row(i);
          ++cnt;
        }
      }
      if (cnt > 0) centers.row(r) = acc / cnt;
    }
  }

  GmmParams p;
  p.weights.resize(k);
  const Eigen::MatrixXd global_cov =
      weighted_cov(z, Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(n), static_cast<double>(n));
  for (int r = 0; r < k; ++r) {
    Eigen::VectorXd w = (label.array() == r).cast<double>();
    const double cnt = w.sum();
    p.weights(r) = std::max(cnt, 1.0);
    p.means.push_back(centers.row(r).transpose());
    if (cnt > static_cast<double>(dim)) {
      p.covs.push_back(floor_cov(weighted_cov(z, p.means.back(), w, cnt)));
    } else {
      p.covs.push_back(floor_cov(global_cov));
    }
  }
  p.weights /= p.weights.sum();
  fit.regularized = 0;  // only count EM updates

  Eigen::MatrixXd logp(n, k);
  double prev = -std::numeric_limits<double>::infinity();
  bool prev_regularized = false;
  for (int it = 0; it < std::max(opt.max_iter, 1); ++it) {
    // E-step.
    for (int r = 0; r < k; ++r) {
      Eigen::LLT<Eigen::MatrixXd> llt(p.covs[r]);
      if (llt.info() != Eigen::Success) {
        throw TrainingError("fit_gmm: component covariance lost positive definiteness");
      }
      const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
      Eigen::MatrixXd c = (z.rowwise() - p.means[r].transpose()).transpose();
      llt.matrixL().solveInPlace(c);
      const double base = std::log(p.weights(r)) - 0.5 * (static_cast<double>(dim) * kLog2Pi + log_det);
      logp.col(r) = base - 0.5 * c.colwise().squaredNorm().transpose().array();
    }
    Eigen::VectorXd mx = logp.rowwise().maxCoeff();
    Eigen::VectorXd lse =
        mx.array() + (logp.colwise() - mx).array().exp().rowwise().sum().log();
    const double ll = lse.mean() - stdz.log_jacobian;
    if (!std::isfinite(ll)) throw TrainingError("fit_gmm: non-finite log-likelihood");
    fit.loglik_trace.push_back(ll);
    fit.iterations = it + 1;
    if (opt.observer) opt.observer(it, to_original(p, stdz), ll);

    if (it > 0) {
      if (ll < prev - kMonotoneSlack && !prev_regularized) {
        throw TrainingError("fit_gmm: EM log-likelihood decreased at iteration " +
                            std::to_string(it));
      }
      if (ll - prev < opt.tol * std::abs(prev)) {
        fit.converged = true;
        break;
      }
    }
    prev = ll;
    if (it + 1 >= opt.max_iter) break;

    // M-step.
    Eigen::MatrixXd resp = (logp.colwise() - lse).array().exp();
    const int before = fit.regularized;
    for (int r = 0; r < k; ++r) {
      const double nk = std::max(resp.col(r).sum(), 1e-12);
      p.weights(r) = nk / static_cast<double>(n);
      p.means[r] = (z.transpose() * resp.col(r)) / nk;
      p.covs[r] = floor_cov(weighted_cov(z, p.means[r], resp.col(r), nk));
    }
    p.weights /= p.weights.sum();
    prev_regularized = fit.regularized > before;
  }
  fit.params = to_original(p, stdz);
  return fit;
}

}  // namespace vavit::avmap
