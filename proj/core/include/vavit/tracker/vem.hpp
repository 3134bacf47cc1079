// vavit/tracker/vem.hpp

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
#include <vector>

#include <Eigen/Dense>

#include "vavit/avmap/mapping.hpp"
#include "vavit/gaussian.hpp"
#include "vavit/observations.hpp"
#include "vavit/tracker/config.hpp"

namespace vavit::tracker {

struct PersonTrack {
  int id = 0;
  GaussianBelief belief;
  Eigen::VectorXd appearance;
  Mat6 dynamics_cov = Mat6::Identity();
  int born_at = 0;
  bool dormant = false;
  int low_support_frames = 0;
};

/// q(B_k = n, C_k = r) laid out as K_t x (N+1) x R. Column n = 0 is the
/// clutter hypothesis; its mass is split evenly over r.
class AudioResponsibilities {
 public:
  AudioResponsibilities() = default;
  AudioResponsibilities(int observations, int persons, int regions)
      : k_(observations), n_(persons), r_(regions),
        data_(static_cast<std::size_t>(observations) * (persons + 1) * regions, 0.0) {}

  int observations() const { return k_; }
  int persons() const { return n_; }
  int regions() const { return r_; }

  double& operator()(int k, int n, int r) { return data_[index(k, n, r)]; }
  double operator()(int k, int n, int r) const { return data_[index(k, n, r)]; }

  /// sum_r beta(k, n, r)
  double person_mass(int k, int n) const;

 private:
  std::size_t index(int k, int n, int r) const {
    return (static_cast<std::size_t>(k) * (n_ + 1) + n) * r_ + r;
  }
  int k_ = 0;
  int n_ = 0;
  int r_ = 1;
  std::vector<double> data_;
};

struct AssignmentPosterior {
  Eigen::MatrixXd alpha;  // M_t x (N+1), column 0 = clutter
  AudioResponsibilities beta;
};

/// Factorizations of an audio mapping that the E-steps reuse every frame.
class PreparedAudioModel {
 public:
  struct Expert {
    CholeskyGaussian sigma;
    Eigen::MatrixXd L;
    Eigen::VectorXd l;
    Eigen::MatrixXd Lt_sigma_inv;  // L^T Sigma^-1, 2 x 2J
    Mat2 info;                     // L^T Sigma^-1 L
  };
  struct Band {
    avmap::SubbandMapping mapping;
    std::vector<Expert> experts;
    double log_vol_G = 0.0;
  };

  PreparedAudioModel() = default;
  /// `vol_G_override` > 0 replaces every sub-band's clutter volume.
  explicit PreparedAudioModel(const avmap::AudioMappingModel& model, double vol_G_override = 0.0);

  int K() const { return static_cast<int>(bands_.size()); }
  int R() const { return bands_.empty() ? 1 : static_cast<int>(bands_.front().experts.size()); }
  int feature_dim(int k) const { return bands_[k].mapping.feature_dim(); }
  const Band& band(int k) const { return bands_[k]; }

 private:
  std::vector<Band> bands_;
};

/// Visual assignment posterior alpha (M_t x (N+1)).
Eigen::MatrixXd e_step_visual(std::span<const PersonTrack> tracks,
                              std::span<const VisualObservation> visuals,
                              const TrackerConfig& config);

/// Audio assignment posterior beta. `naive_positions[n]` is the position
/// predicted from the previous posterior mean (x + y at t-1); it selects the
/// region weights p(r | x).
AudioResponsibilities e_step_audio(std::span<const PersonTrack> tracks,
                                   std::span<const AudioObservation> audios,
                                   const PreparedAudioModel& model,
                                   std::span<const Vec2> naive_positions);

struct StateUpdate {
  std::vector<GaussianBelief> beliefs;
  /// Number of prior covariances that had to be projected back to SPD.
  int guarded = 0;
};

/// Per-person Gaussian posterior from the audio, visual and predicted-prior
/// information terms. `predicted[n]` is N(D mu_{t-1}, D Gamma_{t-1} D^T +
/// Lambda). `model` may be null when there are no audio observations.
StateUpdate e_step_state(std::span<const PersonTrack> tracks, const AssignmentPosterior& post,
                         std::span<const VisualObservation> visuals,
                         std::span<const AudioObservation> audios,
                         const PreparedAudioModel* model,
                         std::span<const GaussianBelief> predicted,
                         bool use_visual = true, double lambda_eps = 1e-6);

/// Gamma_t - D Gamma_{t-1} D^T + e e^T before projection.
Mat6 m_step_statistic(const GaussianBelief& previous, const GaussianBelief& updated);

/// Closed-form dynamics covariance:
///   spd_project(Gamma_t - D Gamma_{t-1} D^T + e e^T, eps),  e = mu_t - D mu_{t-1}.
Mat6 m_step(const GaussianBelief& previous, const GaussianBelief& updated, double eps = 1e-6);

/// J(Lambda) = log|S| + tr(S^-1 (e e^T + Gamma_t)),  S = D Gamma_{t-1} D^T + Lambda.
/// The M-step minimizes this.
double m_step_objective(const GaussianBelief& previous, const GaussianBelief& updated,
                        const Mat6& lambda);

/// Moves h toward the responsibility-weighted mean descriptor:
/// h' = normalize((1 - rho) h + rho u_bar),  rho = rate * min(1, sum_m w_m).
Eigen::VectorXd update_appearance(const Eigen::VectorXd& h, const Eigen::VectorXd& weights,
                                  std::span<const VisualObservation> visuals, double rate);

/// chi_n = [ (1/K_t) sum_k sum_r beta(k, n, r) >= gamma ], n = 1..N.
std::vector<bool> diarize(const AudioResponsibilities& beta, double gamma);

}  // namespace vavit::tracker
