// tests/unit/test_avmap.cpp

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vavit/avmap/gmm.hpp"
#include "vavit/avmap/io.hpp"
#include "vavit/avmap/mapping.hpp"
#include "vavit/avmap/train.hpp"
#include "vavit/errors.hpp"

namespace vavit::avmap {
namespace {

using vavit::testing::known_mapping;
using vavit::testing::random_spd;
using vavit::testing::random_vector;
using vavit::testing::sample_known_pairs;

SubbandMapping random_band(int J, int R, Rng& rng) {
  SubbandMapping m;
  m.J = J;
  for (int r = 0; r < R; ++r) {
    AffineExpert e;
    e.L = random_vector(2 * J * 2, rng).reshaped(2 * J, 2);
    e.l = random_vector(2 * J, rng);
    e.Sigma = random_spd(2 * J, rng);
    e.nu = Vec2(random_vector(2, rng, 3.0));
    e.Omega = Mat2(random_spd(2, rng, 2.0));
    e.pi = 1.0 / R;
    m.experts.push_back(e);
  }
  m.feature_lo = Eigen::VectorXd::Constant(2 * J, -5.0);
  m.feature_hi = Eigen::VectorXd::Constant(2 * J, 5.0);
  return m;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(AffineLoglik, ZeroResidual) {
  Rng rng(1);
  const SubbandMapping m = random_band(3, 2, rng);
  const Vec2 x(0.7, -1.2);
  const auto& e = m.experts[1];
  const Eigen::VectorXd g = e.L * x + e.l;
  const double peak = -0.5 * std::log((2.0 * std::numbers::pi * e.Sigma).determinant());
  EXPECT_NEAR(affine_loglik(m, g, x, 1), peak, 1e-10);
  EXPECT_LT(affine_loglik(m, g + Eigen::VectorXd::Constant(6, 0.01), x, 1), peak);
}

TEST(AffineLoglik, ZeroPositionUsesOffset) {
  Rng rng(2);
  const SubbandMapping m = random_band(2, 1, rng);
  const Eigen::VectorXd g = random_vector(4, rng);
  EXPECT_DOUBLE_EQ(affine_loglik(m, g, Vec2::Zero(), 0),
                   gaussian_logpdf(g, m.experts[0].l, m.experts[0].Sigma));
}

TEST(AffineLoglik, MatchesDenseEvaluation) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SubbandMapping m = random_band(4, 3, rng);
    const Vec2 x(random_vector(2, rng));
    const Eigen::VectorXd g = random_vector(8, rng, 2.0);
    for (int r = 0; r < 3; ++r) {
      const auto& e = m.experts[r];
      const Eigen::VectorXd d = g - e.L * x - e.l;
      const double dense = -0.5 * (8 * std::log(2 * std::numbers::pi) +
                                   std::log(e.Sigma.determinant()) + d.dot(e.Sigma.inverse() * d));
      EXPECT_NEAR(affine_loglik(m, g, x, r), dense, 1e-10 * std::abs(dense));
    }
  }
}

TEST(AffineLoglik, RejectsBadIndex) {
  Rng rng(4);
  const SubbandMapping m = random_band(2, 2, rng);
  EXPECT_THROW(affine_loglik(m, Eigen::VectorXd::Zero(4), Vec2::Zero(), 2), InputError);
}

TEST(RegionPosterior, SingleRegion) {
  Rng rng(5);
  const SubbandMapping m = random_band(2, 1, rng);
  const RegionPosterior p = region_posterior(m, Vec2(100, 100));
  ASSERT_EQ(p.weights.size(), 1);
  EXPECT_EQ(p.weights(0), 1.0);
}

TEST(RegionPosterior, EquidistantSymmetry) {
  Rng rng(6);
  SubbandMapping m = random_band(2, 2, rng);
  m.experts[0].nu = Vec2(-1, 0);
  m.experts[1].nu = Vec2(1, 0);
  m.experts[0].Omega = m.experts[1].Omega = Mat2::Identity();
  const RegionPosterior p = region_posterior(m, Vec2(0, 3));
  EXPECT_NEAR(p.weights(0), 0.5, 1e-15);
  EXPECT_NEAR(p.weights(1), 0.5, 1e-15);
}

TEST(RegionPosterior, MatchesDirectFormula) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    SubbandMapping m = random_band(2, 4, rng);
    Eigen::VectorXd pi = sample_uniform_simplex(4, rng);
    for (int r = 0; r < 4; ++r) m.experts[r].pi = pi(r);
    const Vec2 x(random_vector(2, rng, 2.0));
    Eigen::VectorXd direct(4);
    for (int r = 0; r < 4; ++r) {
      const auto& e = m.experts[r];
      const Eigen::Vector2d d = x - e.nu;
      direct(r) = e.pi * std::exp(-0.5 * d.dot(e.Omega.inverse() * d)) /
                  (2 * std::numbers::pi * std::sqrt(e.Omega.determinant()));
    }
    direct /= direct.sum();
    const RegionPosterior p = region_posterior(m, x);
    EXPECT_NEAR(p.weights.sum(), 1.0, 1e-10);
    EXPECT_LT((p.weights - direct).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RegionPosterior, InvariantToCommonPriorScale) {
  Rng rng(8);
  SubbandMapping m = random_band(2, 3, rng);
  SubbandMapping scaled = m;
  for (auto& e : scaled.experts) e.pi *= 4.0;
  const Vec2 x(0.3, -0.4);
  const Eigen::VectorXd a = region_posterior(m, x).weights;
  const Eigen::VectorXd b = region_posterior(scaled, x).weights;
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RegionPosterior, FarAwayFallsBackToPrior) {
  Rng rng(9);
  SubbandMapping m = random_band(2, 3, rng);
  m.experts[0].pi = 0.2;
  m.experts[1].pi = 0.3;
  m.experts[2].pi = 0.5;
  const RegionPosterior p = region_posterior(m, Vec2(1e12, -1e12));
  EXPECT_TRUE(p.degenerate);
  EXPECT_EQ(p.weights, Eigen::Vector3d(0.2, 0.3, 0.5));
}

TEST(DoaPointModel, Shape) {
  const AudioMappingModel m = doa_point_model(5.0);
  EXPECT_EQ(m.mode, MappingMode::kDoaPoint);
  EXPECT_EQ(m.J(), 1);
  EXPECT_EQ(m.R(), 1);
  const Vec2 x(640, 480);
  EXPECT_NEAR(affine_loglik(m.subbands[0], x, x, 0), -std::log(2 * std::numbers::pi * 25.0), 1e-14);
  EXPECT_EQ(region_posterior(m.subbands[0], Vec2(3, 1199)).weights(0), 1.0);
  EXPECT_NO_THROW(m.validate());
  EXPECT_THROW(doa_point_model(0.0), InputError);
}

TEST(ExpertFromJoint, ConditionsJointGaussian) {
  Rng rng(10);
  const Eigen::MatrixXd C = random_spd(6, rng, 2.0);
  const Eigen::VectorXd mean = random_vector(6, rng);
  const AffineExpert e = expert_from_joint(0.25, mean, C);
  const Eigen::MatrixXd cxx = C.topLeftCorner(2, 2), cgx = C.bottomLeftCorner(4, 2);
  const Eigen::MatrixXd L = cgx * cxx.inverse();
  EXPECT_LT((e.L - L).norm(), 1e-12);
  EXPECT_LT((e.l - (mean.tail(4) - L * mean.head(2))).norm(), 1e-12);
  EXPECT_LT((e.Sigma - (C.bottomRightCorner(4, 4) - L * cgx.transpose())).norm(), 1e-12);
  EXPECT_EQ(e.nu, Vec2(mean.head(2)));
  EXPECT_EQ(e.Omega, Mat2(cxx));
  EXPECT_EQ(e.pi, 0.25);
}

TEST(TrainMapping, RecoversSingleAffineModel) {
  Rng rng(11);
  const AudioMappingModel truth = known_mapping(2, 3, 1, 0.01, rng);
  const auto pairs = sample_known_pairs(truth, 2000, rng);
  TrainingOptions opt;
  opt.R = 1;
  const TrainingResult res = train_mapping(pairs, opt);
  for (int k = 0; k < 2; ++k) {
    const auto& L = truth.subbands[k].experts[0].L;
    EXPECT_LT((res.model.subbands[k].experts[0].L - L).norm(), 0.05 * L.norm());
  }
}

TEST(TrainMapping, NoiselessAffineFitIsExact) {
  Rng rng(12);
  const AudioMappingModel truth = known_mapping(1, 2, 1, 0.0, rng);
  const auto& e = truth.subbands[0].experts[0];
  std::vector<TrainingPair> pairs;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 10; ++j) {
      TrainingPair p;
      p.x = Vec2(50.0 + 90.0 * i, 60.0 + 110.0 * j);
      p.g = (e.L * p.x + e.l).transpose();
      pairs.push_back(p);
    }
  }
  TrainingOptions opt;
  opt.R = 1;
  const TrainingResult res = train_mapping(pairs, opt);
  for (const auto& p : pairs) {
    const Eigen::VectorXd pred = predict_feature(res.model.subbands[0], p.x);
    EXPECT_LT((pred - p.g.row(0).transpose()).cwiseAbs().maxCoeff(), 1e-6);
  }
  EXPECT_LE(res.subbands[0].residual_rms, 1e-6);
}

TEST(TrainMapping, LikelihoodTraceMonotoneByDirectSummation) {
  Rng rng(13);
  const AudioMappingModel truth = known_mapping(1, 2, 3, 0.2, rng);
  const auto pairs = sample_known_pairs(truth, 1500, rng);
  Eigen::MatrixXd data(pairs.size(), 6);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    data.row(i) << pairs[i].x.transpose(), pairs[i].g.row(0);
  }
  std::vector<double> direct;
  GmmOptions opt;
  opt.components = 3;
  opt.observer = [&](int, const GmmParams& p, double) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      std::vector<double> terms;
      for (int c = 0; c < 3; ++c) {
        terms.push_back(std::log(p.weights(c)) +
                        gaussian_logpdf(data.row(i).transpose(), p.means[c], p.covs[c]));
      }
      total += log_sum_exp(terms);
    }
    direct.push_back(total / data.rows());
  };
  const GmmFit fit = fit_gmm(data, opt);
  ASSERT_GE(direct.size(), 2u);
  ASSERT_EQ(direct.size(), fit.loglik_trace.size());
  for (std::size_t i = 1; i < direct.size(); ++i) {
    EXPECT_GE(direct[i] - direct[i - 1], -1e-9) << "iteration " << i;
  }
}

TEST(TrainMapping, SelfConsistentRefit) {
  Rng rng(14);
  const AudioMappingModel truth = known_mapping(1, 2, 3, 0.2, rng);
  TrainingOptions opt;
  opt.R = 3;
  const TrainingResult first = train_mapping(sample_known_pairs(truth, 4000, rng), opt);
  const TrainingResult second = train_mapping(sample_known_pairs(first.model, 4000, rng), opt);
  const auto& a = first.model.subbands[0];
  const auto& b = second.model.subbands[0];
  const double residual = std::sqrt(a.experts[0].Sigma.trace() / a.feature_dim());
  for (const auto& ea : a.experts) {
    // Components are matched by region center.
    const AffineExpert* eb = &b.experts[0];
    for (const auto& e : b.experts) {
      if ((e.nu - ea.nu).norm() < (eb->nu - ea.nu).norm()) eb = &e;
    }
    double sq = 0.0;
    int n = 0;
    const Eigen::Vector2d sd = ea.Omega.diagonal().cwiseSqrt();
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        const Vec2 x = ea.nu + Vec2(i * 0.5 * sd.x(), j * 0.5 * sd.y());
        sq += (ea.L * x + ea.l - eb->L * x - eb->l).squaredNorm();
        n += a.feature_dim();
      }
    }
    EXPECT_LT(std::sqrt(sq / n), 0.1 * residual);
  }
}

TEST(TrainMapping, RejectsTooFewPairs) {
  Rng rng(15);
  const AudioMappingModel truth = known_mapping(1, 2, 3, 0.2, rng);
  TrainingOptions opt;
  opt.R = 3;
  EXPECT_THROW(train_mapping(sample_known_pairs(truth, 29, rng), opt), TrainingError);
  EXPECT_THROW(train_mapping(std::vector<TrainingPair>{}, opt), TrainingError);
}

TEST(ModelIo, RoundTripIsByteIdentical) {
  Rng rng(16);
  const AudioMappingModel truth = known_mapping(3, 2, 3, 0.2, rng);
  TrainingOptions opt;
  const TrainingResult res = train_mapping(sample_known_pairs(truth, 600, rng), opt);
  const auto dir = std::filesystem::temp_directory_path() / "vavit_test_model_io";
  std::filesystem::create_directories(dir);
  save_model((dir / "a.json").string(), res.model, Json{{"note", "x"}});
  const ModelFile loaded = load_model((dir / "a.json").string());
  save_model((dir / "b.json").string(), loaded.model, loaded.metadata);
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  for (int k = 0; k < 3; ++k) {
    for (int r = 0; r < 3; ++r) {
      EXPECT_EQ(loaded.model.subbands[k].experts[r].Sigma, res.model.subbands[k].experts[r].Sigma);
      EXPECT_EQ(loaded.model.subbands[k].experts[r].pi, res.model.subbands[k].experts[r].pi);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(ModelIo, RejectsMalformedDocuments) {
  Json j = model_to_json(doa_point_model(5.0));
  j.erase("subbands");
  EXPECT_THROW(model_from_json(j), Error);
  EXPECT_THROW(load_model("/nonexistent/model.json"), InputError);
}

}  // namespace
}  // namespace vavit::avmap
