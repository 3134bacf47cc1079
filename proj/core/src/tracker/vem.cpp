// core/src/tracker/vem.cpp

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

#include "vavit/tracker/vem.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vavit/errors.hpp"

namespace vavit::tracker {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const Mat46& box_proj() {
  static const Mat46 p = box_projection();
  return p;
}

const Mat6& transition() {
  static const Mat6 d = constant_velocity_transition();
  return d;
}

}  // namespace

double AudioResponsibilities::person_mass(int k, int n) const {
  double s = 0.0;
  for (int r = 0; r < r_; ++r) s += (*this)(k, n, r);
  return s;
}

PreparedAudioModel::PreparedAudioModel(const avmap::AudioMappingModel& model,
                                       double vol_G_override) {
  model.validate();
  for (const auto& m : model.subbands) {
    Band b;
    b.mapping = m;
    b.log_vol_G = vol_G_override > 0.0 ? std::log(vol_G_override) : m.log_clutter_volume();
    for (const auto& e : m.experts) {
      Expert x;
      x.sigma = CholeskyGaussian(e.Sigma, "Sigma");
      x.L = e.L;
      x.l = e.l;
      x.Lt_sigma_inv = x.sigma.solve_matrix(e.L).transpose();
      Mat2 info = x.Lt_sigma_inv * e.L;
      x.info = 0.5 * (info + info.transpose());
      b.experts.push_back(std::move(x));
    }
    bands_.push_back(std::move(b));
  }
}

Eigen::MatrixXd e_step_visual(std::span<const PersonTrack> tracks,
                              std::span<const VisualObservation> visuals,
                              const TrackerConfig& config) {
  const int M = static_cast<int>(visuals.size());
  const int N = static_cast<int>(tracks.size());
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(M, N + 1);
  const double log_clutter =
      config.visual_clutter ? -config.log_vol_V() - std::log(config.vol_H) : kNegInf;
  std::vector<double> logt(static_cast<std::size_t>(N) + 1);
  for (int m = 0; m < M; ++m) {
    const auto& obs = visuals[m];
    const CholeskyGaussian phi(obs.Phi, "Phi");
    const Mat4 phi_inv = phi.solve_matrix(Mat4::Identity());
    logt[0] = log_clutter;
    for (int n = 0; n < N; ++n) {
      const auto& b = tracks[n].belief;
      const Vec4 pred = box_proj() * b.mean;
      const Mat4 box_cov = box_proj() * b.cov * box_proj().transpose();
      const double trace = phi_inv.cwiseProduct(box_cov).sum();
      double lt = phi.log_density(obs.v, pred) - 0.5 * trace;
      if (tracks[n].appearance.size() == obs.u.size() && obs.u.size() > 0) {
        lt += bhattacharyya_log_likelihood_unchecked(obs.u, tracks[n].appearance,
                                                     config.lambda_app);
      }
      logt[n + 1] = lt;
    }
    const double z = log_sum_exp(logt);
    if (!std::isfinite(z)) {
      alpha(m, 0) = 1.0;  // nothing can explain the box; treat as clutter
      continue;
    }
    for (int n = 0; n <= N; ++n) alpha(m, n) = std::exp(logt[n] - z);
  }
  return alpha;
}

AudioResponsibilities e_step_audio(std::span<const PersonTrack> tracks,
                                   std::span<const AudioObservation> audios,
                                   const PreparedAudioModel& model,
                                   std::span<const Vec2> naive_positions) {
  const int Kt = static_cast<int>(audios.size());
  const int N = static_cast<int>(tracks.size());
  const int R = model.R();
  if (static_cast<int>(naive_positions.size()) != N) {
    throw InputError("e_step_audio: one naive position per track is required");
  }
  AudioResponsibilities beta(Kt, N, R);
  if (Kt == 0) return beta;

  // Region log-weights depend on the person and the sub-band only.
  std::vector<double> logk(static_cast<std::size_t>(N) * R + 1);
  for (int j = 0; j < Kt; ++j) {
    const auto& obs = audios[j];
    if (obs.k < 0 || obs.k >= model.K()) {
      throw InputError("e_step_audio: sub-band index " + std::to_string(obs.k) +
                       " is outside [0, " + std::to_string(model.K()) + ")");
    }
    const auto& band = model.band(obs.k);
    if (obs.g.size() != band.mapping.feature_dim()) {
      throw InputError("e_step_audio: feature of sub-band " + std::to_string(obs.k) +
                       " has the wrong dimension");
    }
    logk[0] = -band.log_vol_G;
    for (int n = 0; n < N; ++n) {
      const auto& b = tracks[n].belief;
      const Vec2 x = position_of(b.mean);
      const Mat2 gxx = b.cov.topLeftCorner<2, 2>();
      const avmap::RegionPosterior region = avmap::region_posterior(band.mapping, naive_positions[n]);
      for (int r = 0; r < R; ++r) {
        const auto& e = band.experts[r];
        const double w = region.weights(r);
        if (!(w > 0.0)) {
          logk[1 + n * R + r] = kNegInf;
          continue;
        }
        const double trace = e.info.cwiseProduct(gxx).sum();
        logk[1 + n * R + r] = e.sigma.log_density(obs.g, e.L * x + e.l) - 0.5 * trace + std::log(w);
      }
    }
    const double z = log_sum_exp(logk);
    const double clutter = std::exp(logk[0] - z) / R;
    for (int r = 0; r < R; ++r) beta(j, 0, r) = clutter;
    for (int n = 0; n < N; ++n) {
      for (int r = 0; r < R; ++r) beta(j, n + 1, r) = std::exp(logk[1 + n * R + r] - z);
    }
  }
  return beta;
}

StateUpdate e_step_state(std::span<const PersonTrack> tracks, const AssignmentPosterior& post,
                         std::span<const VisualObservation> visuals,
                         std::span<const AudioObservation> audios,
                         const PreparedAudioModel* model,
                         std::span<const GaussianBelief> predicted, bool use_visual,
                         double lambda_eps) {
  const int N = static_cast<int>(tracks.size());
  const int M = static_cast<int>(visuals.size());
  const int Kt = static_cast<int>(audios.size());
  if (static_cast<int>(predicted.size()) != N) {
    throw InputError("e_step_state: one predicted belief per track is required");
  }
  if (Kt > 0 && model == nullptr) throw InputError("e_step_state: audio without a mapping");

  std::vector<Mat4> phi_inv(M);
  for (int m = 0; m < M; ++m) {
    phi_inv[m] = CholeskyGaussian(visuals[m].Phi, "Phi").solve_matrix(Mat4::Identity());
  }

  StateUpdate out;
  out.beliefs.resize(N);
  for (int n = 0; n < N; ++n) {
    Mat6 precision = Mat6::Zero();
    Vec6 info = Vec6::Zero();
    // #1 audio
    for (int k = 0; k < Kt; ++k) {
      const auto& band = model->band(audios[k].k);
      for (int r = 0; r < post.beta.regions(); ++r) {
        const double w = post.beta(k, n + 1, r);
        const auto& e = band.experts[r];
        precision.topLeftCorner<2, 2>() += w * e.info;
        info.head<2>() += w * (e.Lt_sigma_inv * (audios[k].g - e.l));
      }
    }
    // #2 visual
    if (use_visual) {
      for (int m = 0; m < M; ++m) {
        const double w = post.alpha(m, n + 1);
        precision.topLeftCorner<4, 4>() += w * phi_inv[m];
        info.head<4>() += w * (phi_inv[m] * visuals[m].v);
      }
    }
    // #3 predicted prior
    Mat6 prior_cov = predicted[n].cov;
    Eigen::LLT<Mat6> llt(prior_cov);
    if (llt.info() != Eigen::Success) {
      prior_cov = spd_project6(prior_cov, lambda_eps);
      llt.compute(prior_cov);
      ++out.guarded;
    }
    const Mat6 prior_prec = llt.solve(Mat6::Identity());
    precision += prior_prec;
    info += prior_prec * predicted[n].mean;

    precision = 0.5 * (precision + precision.transpose());
    Eigen::LLT<Mat6> pl(precision);
    if (pl.info() != Eigen::Success) {
      throw NumericError("e_step_state: posterior precision is not positive definite");
    }
    Mat6 gamma = pl.solve(Mat6::Identity());
    gamma = 0.5 * (gamma + gamma.transpose());
    out.beliefs[n].cov = gamma;
    out.beliefs[n].mean = pl.solve(info);
  }
  return out;
}

Mat6 m_step_statistic(const GaussianBelief& previous, const GaussianBelief& updated) {
  const Mat6& d = transition();
  const Vec6 e = updated.mean - d * previous.mean;
  return updated.cov - d * previous.cov * d.transpose() + e * e.transpose();
}

Mat6 m_step(const GaussianBelief& previous, const GaussianBelief& updated, double eps) {
  return spd_project6(m_step_statistic(previous, updated), eps);
}

double m_step_objective(const GaussianBelief& previous, const GaussianBelief& updated,
                        const Mat6& lambda) {
  const Mat6& d = transition();
  const Vec6 e = updated.mean - d * previous.mean;
  const Mat6 s = d * previous.cov * d.transpose() + lambda;
  Eigen::LLT<Mat6> llt(s);
  if (llt.info() != Eigen::Success) throw NumericError("m_step_objective: S is not SPD");
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const Mat6 rhs = e * e.transpose() + updated.cov;
  return log_det + llt.solve(rhs).trace();
}

Eigen::VectorXd update_appearance(const Eigen::VectorXd& h, const Eigen::VectorXd& weights,
                                  std::span<const VisualObservation> visuals, double rate) {
  if (static_cast<std::size_t>(weights.size()) != visuals.size()) {
    throw InputError("update_appearance: one weight per observation is required");
  }
  const double total = weights.sum();
  if (visuals.empty() || !(total > 0.0) || rate == 0.0) return h;
  Eigen::VectorXd ubar = Eigen::VectorXd::Zero(h.size());
  for (std::size_t m = 0; m < visuals.size(); ++m) {
    if (visuals[m].u.size() != h.size()) {
      throw InputError("update_appearance: descriptor dimension mismatch");
    }
    ubar += weights(static_cast<Eigen::Index>(m)) * visuals[m].u;
  }
  ubar /= total;
  const double rho = rate * std::min(1.0, total);
  Eigen::VectorXd out = (1.0 - rho) * h + rho * ubar;
  return out / out.sum();
}

std::vector<bool> diarize(const AudioResponsibilities& beta, double gamma) {
  const int N = beta.persons();
  const int Kt = beta.observations();
  std::vector<bool> chi(static_cast<std::size_t>(N), false);
  if (Kt == 0) return chi;
  for (int n = 0; n < N; ++n) {
    double s = 0.0;
    for (int k = 0; k < Kt; ++k) s += beta.person_mass(k, n + 1);
    chi[n] = s / Kt >= gamma;
  }
  return chi;
}

}  // namespace vavit::tracker
