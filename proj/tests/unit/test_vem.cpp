// tests/unit/test_vem.cpp

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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vavit/avmap/mapping.hpp"
#include "vavit/errors.hpp"
#include "vavit/tracker/vem.hpp"

namespace vavit::tracker {
namespace {

using vavit::testing::kalman_update;
using vavit::testing::known_mapping;
using vavit::testing::random_spd;
using vavit::testing::random_vector;
using vavit::testing::rel_err;

PersonTrack make_track(const Vec6& mean, const Mat6& cov, Eigen::VectorXd h = {}) {
  PersonTrack p;
  p.belief.mean = mean;
  p.belief.cov = cov;
  p.appearance = std::move(h);
  return p;
}

VisualObservation make_box(const Vec4& v, const Mat4& phi, Eigen::VectorXd u = {}) {
  VisualObservation o;
  o.v = v;
  o.Phi = phi;
  o.u = std::move(u);
  return o;
}

Vec6 random_state(Rng& rng) {
  Vec6 s;
  s << 500 + 50 * sample_standard_normal(rng), 400 + 50 * sample_standard_normal(rng),
      120 + 5 * sample_standard_normal(rng), 240 + 5 * sample_standard_normal(rng),
      sample_standard_normal(rng), sample_standard_normal(rng);
  return s;
}

// ---- E-Z visual ------------------------------------------------------------

TEST(EStepVisual, NoTracksMeansClutter) {
  TrackerConfig c;
  std::vector<VisualObservation> obs = {make_box(Vec4(1, 2, 3, 4), Mat4::Identity()),
                                        make_box(Vec4(5, 6, 7, 8), Mat4::Identity())};
  const Eigen::MatrixXd a = e_step_visual({}, obs, c);
  ASSERT_EQ(a.rows(), 2);
  ASSERT_EQ(a.cols(), 1);
  EXPECT_EQ(a(0, 0), 1.0);
  EXPECT_EQ(a(1, 0), 1.0);
}

TEST(EStepVisual, EmptyFrame) {
  TrackerConfig c;
  std::vector<PersonTrack> tracks = {make_track(Vec6::Zero(), Mat6::Identity())};
  const Eigen::MatrixXd a = e_step_visual(tracks, {}, c);
  EXPECT_EQ(a.rows(), 0);
  EXPECT_EQ(a.cols(), 2);
}

TEST(EStepVisual, ExactHitDominatesClutter) {
  TrackerConfig c;
  Vec6 s;
  s << 100, 200, 50, 80, 0, 0;
  Eigen::VectorXd h = Eigen::VectorXd::Constant(4, 0.25);
  std::vector<PersonTrack> tracks = {make_track(s, 1e-6 * Mat6::Identity(), h)};
  std::vector<VisualObservation> obs = {make_box(s.head<4>(), 1e-2 * Mat4::Identity(), h)};
  double last = 0.0;
  for (double vol : {1e2, 1e6, 1e12}) {
    c.vol_V = vol;
    const double a11 = e_step_visual(tracks, obs, c)(0, 1);
    EXPECT_GE(a11, last);
    last = a11;
  }
  EXPECT_GT(last, 1.0 - 1e-12);
}

TEST(EStepVisual, SymmetricTracksShareEvenly) {
  TrackerConfig c;
  Vec6 a, b;
  a << 90, 200, 50, 80, 0, 0;
  b << 110, 200, 50, 80, 0, 0;
  const Mat6 cov = 4.0 * Mat6::Identity();
  std::vector<PersonTrack> tracks = {make_track(a, cov), make_track(b, cov)};
  std::vector<VisualObservation> obs = {make_box(Vec4(100, 200, 50, 80), 9 * Mat4::Identity())};
  const Eigen::MatrixXd al = e_step_visual(tracks, obs, c);
  EXPECT_EQ(al(0, 1), al(0, 2));
}

TEST(EStepVisual, MatchesDirectFormula) {
  Rng rng(21);
  TrackerConfig c;
  c.vol_V = 1e7;
  c.vol_H = 0.5;
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 3, M = 4, d = 5;
    std::vector<PersonTrack> tracks;
    for (int n = 0; n < N; ++n) {
      tracks.push_back(make_track(random_state(rng), Mat6(random_spd(6, rng, 4.0)),
                                  sample_uniform_simplex(d, rng)));
    }
    std::vector<VisualObservation> obs;
    for (int m = 0; m < M; ++m) {
      const Vec4 v = tracks[m % N].belief.mean.head<4>() + Vec4(random_vector(4, rng, 4.0));
      obs.push_back(make_box(v, Mat4(random_spd(4, rng, 9.0)), sample_uniform_simplex(d, rng)));
    }
    const Eigen::MatrixXd alpha = e_step_visual(tracks, obs, c);
    const Mat46 pf = box_projection();
    for (int m = 0; m < M; ++m) {
      Eigen::VectorXd tau(N + 1);
      tau(0) = 1.0 / (c.vol_V * c.vol_H);
      const Mat4 phi_inv = obs[m].Phi.inverse();
      for (int n = 0; n < N; ++n) {
        const auto& b = tracks[n].belief;
        const Vec4 r = obs[m].v - pf * b.mean;
        const double gauss = std::exp(-0.5 * r.dot(phi_inv * r)) /
                             (std::pow(2 * std::numbers::pi, 2) * std::sqrt(obs[m].Phi.determinant()));
        const double pen = std::exp(-0.5 * (phi_inv * pf * b.cov * pf.transpose()).trace());
        tau(n + 1) = gauss * pen * bhattacharyya_likelihood(obs[m].u, tracks[n].appearance, c.lambda_app);
      }
      tau /= tau.sum();
      EXPECT_LT((alpha.row(m).transpose() - tau).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(alpha.row(m).sum(), 1.0, 1e-12);
    }
  }
}

// ---- E-Z audio -------------------------------------------------------------

TEST(EStepAudio, NoAudioGivesEmptyBeta) {
  Rng rng(22);
  PreparedAudioModel model(known_mapping(2, 2, 3, 0.2, rng));
  std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6::Identity())};
  std::vector<Vec2> naive = {Vec2(500, 400)};
  const AudioResponsibilities b = e_step_audio(tracks, {}, model, naive);
  EXPECT_EQ(b.observations(), 0);
}

TEST(EStepAudio, NoiselessFeatureSelectsGeneratingExpert) {
  Rng rng(23);
  const avmap::AudioMappingModel m = known_mapping(1, 4, 3, 0.2, rng);
  PreparedAudioModel model(m);
  const auto& band = m.subbands[0];
  for (int rstar = 0; rstar < 3; ++rstar) {
    for (double dy : {-100.0, 0.0, 100.0}) {
      const Vec2 x = band.experts[rstar].nu + Vec2(0.0, dy);
      Vec6 s;
      s << x, 100, 200, 0, 0;
      std::vector<PersonTrack> tracks = {make_track(s, Mat6::Identity())};
      AudioObservation o;
      o.k = 0;
      o.g = band.experts[rstar].L * x + band.experts[rstar].l;
      std::vector<AudioObservation> audios = {o};
      std::vector<Vec2> naive = {x};
      const AudioResponsibilities b = e_step_audio(tracks, audios, model, naive);
      int best = 0;
      for (int r = 1; r < 3; ++r)
        if (b(0, 1, r) > b(0, 1, best)) best = r;
      EXPECT_EQ(best, rstar);
    }
  }
}

TEST(EStepAudio, FarFeatureGoesToClutter) {
  Rng rng(24);
  const avmap::AudioMappingModel m = known_mapping(1, 2, 3, 0.2, rng);
  PreparedAudioModel model(m);
  Vec6 s;
  s << 960, 600, 100, 200, 0, 0;
  std::vector<PersonTrack> tracks = {make_track(s, Mat6::Identity())};
  AudioObservation o;
  o.k = 0;
  o.g = m.subbands[0].feature_hi;  // corner of the clutter box
  std::vector<AudioObservation> audios = {o};
  std::vector<Vec2> naive = {Vec2(960, 600)};
  const AudioResponsibilities b = e_step_audio(tracks, audios, model, naive);
  EXPECT_GT(b.person_mass(0, 0), 0.5);
}

TEST(EStepAudio, MatchesDirectFormula) {
  Rng rng(25);
  const avmap::AudioMappingModel m = known_mapping(3, 2, 3, 0.5, rng);
  PreparedAudioModel model(m);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 2;
    std::vector<PersonTrack> tracks;
    std::vector<Vec2> naive;
    for (int n = 0; n < N; ++n) {
      Vec6 s;
      s << 1920 * (0.2 + 0.6 * n) + 40 * sample_standard_normal(rng), 600, 100, 200, 1, 0;
      tracks.push_back(make_track(s, Mat6(random_spd(6, rng, 2.0))));
      naive.push_back(s.head<2>() + Vec2(3, -2));
    }
    std::vector<AudioObservation> audios;
    for (int k = 0; k < 3; ++k) {
      AudioObservation o;
      o.k = k;
      const auto& e = m.subbands[k].experts[k % 3];
      o.g = e.L * tracks[k % N].belief.mean.head<2>() + e.l + random_vector(4, rng, 0.5);
      audios.push_back(o);
    }
    const AudioResponsibilities beta = e_step_audio(tracks, audios, model, naive);
    for (int j = 0; j < 3; ++j) {
      const auto& band = m.subbands[audios[j].k];
      const double vol = (band.feature_hi - band.feature_lo).prod();
      std::vector<double> kappa(1 + N * 3);
      kappa[0] = 1.0 / vol;
      for (int n = 0; n < N; ++n) {
        Eigen::Vector3d prior;
        for (int r = 0; r < 3; ++r) {
          const auto& e = band.experts[r];
          const Eigen::Vector2d d = naive[n] - e.nu;
          prior(r) = e.pi * std::exp(-0.5 * d.dot(e.Omega.inverse() * d)) / std::sqrt(e.Omega.determinant());
        }
        prior /= prior.sum();
        for (int r = 0; r < 3; ++r) {
          const auto& e = band.experts[r];
          const Eigen::VectorXd res = audios[j].g - e.L * tracks[n].belief.mean.head<2>() - e.l;
          const Eigen::MatrixXd si = e.Sigma.inverse();
          const double gauss = std::exp(-0.5 * res.dot(si * res)) /
                               (std::pow(2 * std::numbers::pi, 2) * std::sqrt(e.Sigma.determinant()));
          const double pen = std::exp(-0.5 * (e.L.transpose() * si * e.L * tracks[n].belief.cov.topLeftCorner<2, 2>()).trace());
          kappa[1 + n * 3 + r] = gauss * pen * prior(r);
        }
      }
      double z = 0.0;
      for (double v : kappa) z += v;
      double total = 0.0;
      for (int r = 0; r < 3; ++r) {
        EXPECT_NEAR(beta(j, 0, r), kappa[0] / z / 3.0, 1e-10);
        for (int n = 0; n < N; ++n) EXPECT_NEAR(beta(j, n + 1, r), kappa[1 + n * 3 + r] / z, 1e-10);
        for (int n = 0; n <= N; ++n) total += beta(j, n, r);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(EStepAudio, RejectsBadSubband) {
  Rng rng(26);
  PreparedAudioModel model(known_mapping(2, 2, 3, 0.2, rng));
  std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6::Identity())};
  std::vector<Vec2> naive = {Vec2(500, 400)};
  AudioObservation o;
  o.k = 2;
  o.g = Eigen::VectorXd::Zero(4);
  std::vector<AudioObservation> audios = {o};
  EXPECT_THROW(e_step_audio(tracks, audios, model, naive), InputError);
  audios[0].k = 1;
  audios[0].g = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(e_step_audio(tracks, audios, model, naive), InputError);
}

// ---- E-S -------------------------------------------------------------------

TEST(EStepState, NoObservationsKeepsPrediction) {
  Rng rng(27);
  std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6(random_spd(6, rng)))};
  GaussianBelief pred;
  pred.mean = random_state(rng);
  pred.cov = random_spd(6, rng, 5.0);
  std::vector<GaussianBelief> predicted = {pred};
  AssignmentPosterior post;
  post.alpha = Eigen::MatrixXd::Zero(0, 2);
  const StateUpdate u = e_step_state(tracks, post, {}, {}, nullptr, predicted);
  EXPECT_LT(rel_err(u.beliefs[0].mean, pred.mean), 1e-12);
  EXPECT_LT(rel_err(u.beliefs[0].cov, pred.cov), 1e-10);
}

TEST(EStepState, SingleBoxIsKalmanUpdate) {
  Rng rng(28);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6::Identity())};
    GaussianBelief pred;
    pred.mean = random_state(rng);
    pred.cov = random_spd(6, rng, 10.0);
    const Mat4 phi = random_spd(4, rng, 9.0);
    const Vec4 v = pred.mean.head<4>() + Vec4(random_vector(4, rng, 5.0));
    std::vector<VisualObservation> obs = {make_box(v, phi)};
    AssignmentPosterior post;
    post.alpha = Eigen::MatrixXd(1, 2);
    post.alpha << 0.0, 1.0;
    std::vector<GaussianBelief> predicted = {pred};
    const StateUpdate u = e_step_state(tracks, post, obs, {}, nullptr, predicted);

    Eigen::VectorXd m = pred.mean;
    Eigen::MatrixXd P = pred.cov;
    kalman_update(m, P, box_projection(), phi, v);
    EXPECT_LT(rel_err(u.beliefs[0].mean, m), 1e-8);
    EXPECT_LT(rel_err(u.beliefs[0].cov, P), 1e-8);
  }
}

TEST(EStepState, DoaPointIsPositionKalmanUpdate) {
  Rng rng(29);
  const double sigma = 7.0;
  PreparedAudioModel model(avmap::doa_point_model(sigma, Vec2(1920, 1200), 1));
  std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6::Identity())};
  GaussianBelief pred;
  pred.mean = random_state(rng);
  pred.cov = random_spd(6, rng, 10.0);
  AudioObservation o;
  o.k = 0;
  o.g = pred.mean.head<2>() + Eigen::Vector2d(6, -4);
  std::vector<AudioObservation> audios = {o};
  AssignmentPosterior post;
  post.alpha = Eigen::MatrixXd::Zero(0, 2);
  post.beta = AudioResponsibilities(1, 1, 1);
  post.beta(0, 1, 0) = 1.0;
  std::vector<GaussianBelief> predicted = {pred};
  const StateUpdate u = e_step_state(tracks, post, {}, audios, &model, predicted);

  Eigen::VectorXd m = pred.mean;
  Eigen::MatrixXd P = pred.cov;
  kalman_update(m, P, position_projection(), sigma * sigma * Eigen::Matrix2d::Identity(), o.g);
  EXPECT_LT(rel_err(u.beliefs[0].mean, m), 1e-8);
  EXPECT_LT(rel_err(u.beliefs[0].cov, P), 1e-8);
}

TEST(EStepState, ClutterOnlyAudioEqualsVisualOnly) {
  Rng rng(30);
  const avmap::AudioMappingModel m = known_mapping(2, 2, 3, 0.2, rng);
  PreparedAudioModel model(m);
  std::vector<PersonTrack> tracks = {make_track(random_state(rng), Mat6::Identity()),
                                     make_track(random_state(rng), Mat6::Identity())};
  std::vector<GaussianBelief> predicted(2);
  for (auto& p : predicted) {
    p.mean = random_state(rng);
    p.cov = random_spd(6, rng, 10.0);
  }
  std::vector<VisualObservation> obs = {make_box(predicted[0].mean.head<4>(), 9 * Mat4::Identity()),
                                        make_box(predicted[1].mean.head<4>(), 9 * Mat4::Identity())};
  AssignmentPosterior post;
  post.alpha = Eigen::MatrixXd(2, 3);
  post.alpha << 0.1, 0.8, 0.1, 0.0, 0.3, 0.7;
  const StateUpdate visual_only = e_step_state(tracks, post, obs, {}, nullptr, predicted);

  std::vector<AudioObservation> audios(2);
  for (int k = 0; k < 2; ++k) {
    audios[k].k = k;
    audios[k].g = random_vector(4, rng);
  }
  post.beta = AudioResponsibilities(2, 2, 3);
  for (int k = 0; k < 2; ++k)
    for (int r = 0; r < 3; ++r) post.beta(k, 0, r) = 1.0 / 3.0;
  const StateUpdate with_audio = e_step_state(tracks, post, obs, audios, &model, predicted);
  for (int n = 0; n < 2; ++n) {
    EXPECT_EQ(with_audio.beliefs[n].mean, visual_only.beliefs[n].mean);
    EXPECT_EQ(with_audio.beliefs[n].cov, visual_only.beliefs[n].cov);
  }
}

TEST(EStepState, GuardsSingularPrior) {
  std::vector<PersonTrack> tracks = {make_track(Vec6::Zero(), Mat6::Identity())};
  GaussianBelief pred;
  pred.cov = Mat6::Zero();
  std::vector<GaussianBelief> predicted = {pred};
  AssignmentPosterior post;
  post.alpha = Eigen::MatrixXd::Zero(0, 2);
  const StateUpdate u = e_step_state(tracks, post, {}, {}, nullptr, predicted, true, 1e-6);
  EXPECT_EQ(u.guarded, 1);
  EXPECT_NO_THROW(u.beliefs[0].validate());
}

// ---- M-step ----------------------------------------------------------------

TEST(MStep, StationaryCaseGivesEpsIdentity) {
  Rng rng(31);
  GaussianBelief prev;
  prev.mean = random_state(rng);
  prev.cov = random_spd(6, rng);
  const Mat6 d = constant_velocity_transition();
  GaussianBelief upd;
  upd.mean = d * prev.mean;
  upd.cov = d * prev.cov * d.transpose();
  EXPECT_LT((m_step(prev, upd, 1e-6) - 1e-6 * Mat6::Identity()).norm(), 1e-9);
}

TEST(MStep, OuterProductForm) {
  Rng rng(32);
  GaussianBelief prev;
  prev.mean = random_state(rng);
  prev.cov = random_spd(6, rng);
  const Mat6 d = constant_velocity_transition();
  const Vec6 e = random_vector(6, rng);
  GaussianBelief upd;
  upd.mean = d * prev.mean + e;
  upd.cov = d * prev.cov * d.transpose();
  const Mat6 lam = m_step(prev, upd, 1e-6);
  const Mat6 expect = e * e.transpose() + 1e-6 * (Mat6::Identity() - e * e.transpose() / e.squaredNorm());
  EXPECT_LT((lam - expect).norm(), 1e-9 * e.squaredNorm());
}

TEST(MStep, FiniteDifferenceGradientVanishes) {
  Rng rng(33);
  const Mat6 d = constant_velocity_transition();
  int cases = 0;
  while (cases < 100) {
    GaussianBelief prev, upd;
    prev.mean = random_state(rng);
    prev.cov = random_spd(6, rng, 2.0, 0.5);
    const Mat6 lam_true = random_spd(6, rng, 2.0, 0.5);
    const Vec6 e = random_vector(6, rng, 0.3);
    upd.mean = d * prev.mean + e;
    upd.cov = d * prev.cov * d.transpose() + lam_true - e * e.transpose();
    if (Eigen::LLT<Mat6>(upd.cov).info() != Eigen::Success) continue;
    ++cases;
    const Mat6 lam = m_step(prev, upd, 1e-6);
    EXPECT_LT((lam - lam_true).norm(), 1e-9);
    const double h = 1e-5;
    double g2 = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        Mat6 dp = lam, dm = lam;
        dp(i, j) += h;
        dm(i, j) -= h;
        if (i != j) dp(j, i) += h, dm(j, i) -= h;
        const double g = (m_step_objective(prev, upd, dp) - m_step_objective(prev, upd, dm)) / (2 * h);
        g2 += g * g;
      }
    }
    EXPECT_LT(std::sqrt(g2), 1e-6);
  }
}

TEST(MStep, ObjectiveIsMinimizedAtSolution) {
  Rng rng(34);
  const Mat6 d = constant_velocity_transition();
  GaussianBelief prev, upd;
  prev.mean = random_state(rng);
  prev.cov = random_spd(6, rng, 2.0, 0.5);
  upd.mean = d * prev.mean;
  upd.cov = d * prev.cov * d.transpose() + Mat6(random_spd(6, rng, 2.0, 0.5));
  const Mat6 lam = m_step(prev, upd);
  const double j0 = m_step_objective(prev, upd, lam);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat6 pert = 0.05 * random_spd(6, rng, 1.0, 0.0);
    EXPECT_GT(m_step_objective(prev, upd, lam + pert), j0);
  }
}

// ---- appearance and diarization ---------------------------------------------

TEST(UpdateAppearance, ZeroRateKeepsDescriptor) {
  Rng rng(35);
  const Eigen::VectorXd h = sample_uniform_simplex(6, rng);
  std::vector<VisualObservation> obs = {make_box(Vec4::Zero(), Mat4::Identity(), sample_uniform_simplex(6, rng))};
  EXPECT_EQ(update_appearance(h, Eigen::VectorXd::Ones(1), obs, 0.0), h);
}

TEST(UpdateAppearance, FullRateAdoptsObservation) {
  Rng rng(36);
  const Eigen::VectorXd h = sample_uniform_simplex(6, rng);
  const Eigen::VectorXd u = sample_uniform_simplex(6, rng);
  std::vector<VisualObservation> obs = {make_box(Vec4::Zero(), Mat4::Identity(), u)};
  EXPECT_LT((update_appearance(h, Eigen::VectorXd::Ones(1), obs, 1.0) - u).norm(), 1e-15);
}

TEST(UpdateAppearance, WeightedAverage) {
  Rng rng(37);
  const Eigen::VectorXd h = sample_uniform_simplex(5, rng);
  std::vector<VisualObservation> obs;
  for (int m = 0; m < 3; ++m) obs.push_back(make_box(Vec4::Zero(), Mat4::Identity(), sample_uniform_simplex(5, rng)));
  const Eigen::Vector3d w(0.2, 0.3, 0.1);
  const double rate = 0.4;
  const Eigen::VectorXd ubar = (w(0) * obs[0].u + w(1) * obs[1].u + w(2) * obs[2].u) / w.sum();
  const double rho = rate * std::min(1.0, w.sum());
  Eigen::VectorXd expect = (1 - rho) * h + rho * ubar;
  expect /= expect.sum();
  const Eigen::VectorXd got = update_appearance(h, w, obs, rate);
  EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(got.sum(), 1.0, 1e-15);
  EXPECT_EQ(update_appearance(h, Eigen::VectorXd(0), {}, rate), h);
}

TEST(Diarize, AllMassOnOnePerson) {
  AudioResponsibilities b(3, 2, 2);
  for (int k = 0; k < 3; ++k) b(k, 1, k % 2) = 1.0;
  const std::vector<bool> chi = diarize(b, 1.0);
  EXPECT_TRUE(chi[0]);
  EXPECT_FALSE(chi[1]);
}

TEST(Diarize, NoAudioMeansSilence) {
  const std::vector<bool> chi = diarize(AudioResponsibilities(0, 3, 2), 0.01);
  ASSERT_EQ(chi.size(), 3u);
  for (bool c : chi) EXPECT_FALSE(c);
}

TEST(Diarize, ThresholdArithmetic) {
  AudioResponsibilities b(4, 2, 1);
  for (int k = 0; k < 4; ++k) {
    b(k, 1, 0) = 0.6;
    b(k, 2, 0) = 0.4;
  }
  EXPECT_EQ(diarize(b, 0.5), (std::vector<bool>{true, false}));
}

TEST(Diarize, MonotoneInThreshold) {
  Rng rng(38);
  for (int trial = 0; trial < 200; ++trial) {
    AudioResponsibilities b(5, 3, 2);
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd p = sample_uniform_simplex(8, rng);
      for (int n = 0; n <= 3; ++n)
        for (int r = 0; r < 2; ++r) b(k, n, r) = p(n * 2 + r);
    }
    std::vector<bool> prev = diarize(b, 0.01);
    for (double g = 0.02; g < 1.0; g += 0.01) {
      const std::vector<bool> cur = diarize(b, g);
      for (int n = 0; n < 3; ++n) EXPECT_FALSE(!prev[n] && cur[n]);
      prev = cur;
    }
  }
}

}  // namespace
}  // namespace vavit::tracker
