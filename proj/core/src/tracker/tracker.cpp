// core/src/tracker/tracker.cpp

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

#include "vavit/tracker/tracker.hpp"

#include <cmath>
#include <set>
#include <string>

#include "vavit/errors.hpp"

namespace vavit::tracker {

namespace {

void check_simplex(const Eigen::VectorXd& u, const char* what) {
  if (u.size() == 0) return;
  if (!u.allFinite() || (u.array() < 0.0).any() || std::abs(u.sum() - 1.0) > 1e-8) {
    throw InputError(std::string(what) + " must lie on the probability simplex");
  }
}

}  // namespace

Tracker::Tracker(TrackerConfig config, std::shared_ptr<const avmap::AudioMappingModel> mapping)
    : config_(std::move(config)), mapping_(std::move(mapping)), pool_(config_.birth_window) {
  config_.validate();
  if (mapping_) prepared_.emplace(*mapping_, config_.vol_G);
  const Vec2 center = 0.5 * config_.image_size;
  for (int n = 0; n < config_.fixed_n; ++n) {
    PersonTrack p;
    p.id = next_id_++;
    p.belief.mean = make_state(center, Vec2(config_.max_box, config_.max_box) * 0.5, Vec2::Zero());
    p.belief.cov = config_.init_cov_scale * Mat6::Identity();
    p.dynamics_cov = config_.init_dynamics_cov();
    placeholders_.push_back(std::move(p));
  }
}

int Tracker::claim_id() {
  if (!placeholders_.empty()) {
    const int id = placeholders_.front().id;
    placeholders_.erase(placeholders_.begin());
    return id;
  }
  return next_id_++;
}

int Tracker::add_track(const GaussianBelief& belief, const Eigen::VectorXd& appearance,
                       const Mat6& dynamics_cov) {
  belief.validate();
  check_simplex(appearance, "appearance");
  PersonTrack p;
  p.id = claim_id();
  p.belief = belief;
  p.appearance = appearance;
  p.dynamics_cov = dynamics_cov;
  p.born_at = t_;
  tracks_.push_back(std::move(p));
  return tracks_.back().id;
}

void Tracker::validate_frame(const FrameObservations& frame) const {
  for (const auto& v : frame.visuals) {
    if (!v.v.allFinite()) throw InputError("visual observation with non-finite box");
    check_simplex(v.u, "appearance descriptor");
  }
  if (frame.audios.empty()) return;
  if (!prepared_) throw InputError("audio observations given but no audio mapping is loaded");
  std::set<int> seen;
  for (const auto& a : frame.audios) {
    if (a.k < 0 || a.k >= prepared_->K()) {
      throw InputError("sub-band index " + std::to_string(a.k) + " is outside [0, " +
                       std::to_string(prepared_->K()) + ")");
    }
    if (!seen.insert(a.k).second) {
      throw InputError("sub-band index " + std::to_string(a.k) + " appears twice in a frame");
    }
    if (a.g.size() != prepared_->feature_dim(a.k) || !a.g.allFinite()) {
      throw InputError("audio feature of sub-band " + std::to_string(a.k) +
                       " has the wrong dimension or non-finite entries");
    }
  }
}

FrameOutput Tracker::step(const FrameObservations& frame) {
  validate_frame(frame);
  const int N = static_cast<int>(tracks_.size());
  const int M = static_cast<int>(frame.visuals.size());
  const int Kt = static_cast<int>(frame.audios.size());
  const Mat6 D = constant_velocity_transition();

  FrameOutput out;
  out.t = t_;

  std::vector<GaussianBelief> previous(N);
  std::vector<Mat6> previous_lambda(N);
  std::vector<Vec2> naive(N);
  for (int n = 0; n < N; ++n) {
    previous[n] = tracks_[n].belief;
    previous_lambda[n] = tracks_[n].dynamics_cov;
    naive[n] = position_of(D * previous[n].mean);
    tracks_[n].belief = predict_belief(previous[n], DynamicsModel(tracks_[n].dynamics_cov));
  }

  AssignmentPosterior post;
  for (int iter = 0; iter < config_.n_iter; ++iter) {
    post.alpha = e_step_visual(tracks_, frame.visuals, config_);
    post.beta = prepared_ ? e_step_audio(tracks_, frame.audios, *prepared_, naive)
                          : AudioResponsibilities(0, N, 1);
    std::vector<GaussianBelief> predicted(N);
    for (int n = 0; n < N; ++n) {
      predicted[n] = predict_belief(previous[n], DynamicsModel(tracks_[n].dynamics_cov));
    }
    StateUpdate upd = e_step_state(tracks_, post, frame.visuals, frame.audios,
                                   prepared_ ? &*prepared_ : nullptr, predicted,
                                   config_.visual_state_update, config_.lambda_eps);
    out.guarded += upd.guarded;
    const bool run_m = config_.m_step && (config_.m_step_every_iteration || iter + 1 == config_.n_iter);
    for (int n = 0; n < N; ++n) {
      tracks_[n].belief = upd.beliefs[n];
      if (!run_m) continue;
      const double rho = config_.lambda_step;
      if (rho == 1.0) {
        tracks_[n].dynamics_cov = m_step(previous[n], upd.beliefs[n], config_.lambda_eps);
      } else {
        // Average the unprojected statistic; projecting each frame first would
        // bias Lambda upward.
        const Mat6 stat = m_step_statistic(previous[n], upd.beliefs[n]);
        tracks_[n].dynamics_cov =
            spd_project6((1.0 - rho) * previous_lambda[n] + rho * stat, config_.lambda_eps);
      }
    }
  }
  const std::vector<bool> chi = diarize(post.beta, config_.gamma);
  for (int n = 0; n < N; ++n) {
    auto& p = tracks_[n];
    if (p.appearance.size() > 0 && M > 0) {
      p.appearance = update_appearance(p.appearance, post.alpha.col(n + 1), frame.visuals,
                                       config_.appearance_rate);
    }
    double support = M > 0 ? post.alpha.col(n + 1).sum() : 0.0;
    for (int k = 0; k < Kt; ++k) support += post.beta.person_mass(k, n + 1);
    if (support < config_.dormant_threshold) {
      ++p.low_support_frames;
    } else {
      p.low_support_frames = 0;
    }
    p.dormant = p.low_support_frames >= config_.dormant_frames;
  }

  for (int n = 0; n < N; ++n) {
    out.tracks.push_back({tracks_[n].id, tracks_[n].belief, chi[n], tracks_[n].dormant});
  }

  if (config_.birth_enabled) {
    std::vector<VisualObservation> unassigned;
    for (int m = 0; m < M; ++m) {
      Eigen::Index best = 0;
      post.alpha.row(m).maxCoeff(&best);
      if (best == 0) unassigned.push_back(frame.visuals[m]);
    }
    pool_.push(std::move(unassigned));
    for (auto& c : birth_scan(pool_, config_)) {
      PersonTrack p;
      p.id = claim_id();
      p.belief = c.fit.terminal;
      p.appearance = c.appearance;
      p.dynamics_cov = config_.init_dynamics_cov();
      p.born_at = t_;
      out.births.push_back(p.id);
      out.tracks.push_back({p.id, p.belief, false, false});
      tracks_.push_back(std::move(p));
    }
  }

  out.assignments = std::move(post);
  ++t_;
  return out;
}

}  // namespace vavit::tracker
