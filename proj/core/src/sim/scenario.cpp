// core/src/sim/scenario.cpp

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

#include "vavit/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "vavit/avmap/io.hpp"
#include "vavit/errors.hpp"
#include "vavit/random.hpp"

namespace vavit::sim {

namespace {

// Substream identifiers for derive_seed(seed, frame, stream).
enum Stream : std::uint64_t {
  kInit = 1,
  kDynamics = 2,
  kSpeech = 3,
  kVisual = 4,
  kShuffle = 5,
  kAudio = 6,
  kMapping = 7,
  kTraining = 8,
};

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

int segment_length(Rng& rng, double mean, int min_len) {
  const double extra = std::max(0.0, mean - min_len);
  std::geometric_distribution<int> g(1.0 / (extra + 1.0));
  return min_len + g(rng);
}

bool present_at(const ScenarioConfig& c, int n, int t) {
  if (n >= static_cast<int>(c.persons.size())) return true;
  const auto& s = c.persons[n];
  return t >= s.enter_frame && (s.exit_frame < 0 || t < s.exit_frame);
}

const PersonScript* script_of(const ScenarioConfig& c, int n) {
  return n < static_cast<int>(c.persons.size()) ? &c.persons[n] : nullptr;
}

void reflect(double& pos, double& vel, double hi) {
  for (int guard = 0; guard < 4 && (pos < 0.0 || pos > hi); ++guard) {
    if (pos < 0.0) pos = -pos;
    if (pos > hi) pos = 2.0 * hi - pos;
    vel = -vel;
  }
  pos = std::clamp(pos, 0.0, hi);
}

}  // namespace

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
  };
  require(n_persons >= 0, "scenario.n_persons", "must be >= 0");
  require(n_frames >= 0, "scenario.n_frames", "must be >= 0");
  require(image_size.x() > 0.0 && image_size.y() > 0.0, "scenario.image_size", "must be positive");
  require((dynamics_noise_std.array() >= 0.0).all(), "scenario.dynamics_noise_std", "must be >= 0");
  require((size_min.array() > 0.0).all() && (size_max.array() >= size_min.array()).all(),
          "scenario.size_min", "sizes must satisfy 0 < size_min <= size_max");
  require(detection_prob >= 0.0 && detection_prob <= 1.0, "scenario.detection_prob",
          "must lie in [0, 1]");
  require(clutter_rate_visual >= 0.0, "scenario.clutter_rate_visual", "must be >= 0");
  require(max_box > 0.0, "scenario.max_box", "must be positive");
  require((visual_noise_std.array() >= 0.0).all(), "scenario.visual_noise_std", "must be >= 0");
  require(appearance_dim >= 1, "scenario.appearance_dim", "must be >= 1");
  require(prototype_concentration > 0.0, "scenario.prototype_concentration", "must be positive");
  require(observation_concentration > 0.0, "scenario.observation_concentration",
          "must be positive");
  require(turn_mean >= min_segment, "scenario.turn_mean", "must be >= min_segment");
  require(gap_mean >= min_segment, "scenario.gap_mean", "must be >= min_segment");
  require(min_segment >= 1, "scenario.min_segment", "must be >= 1");
  require(overlap_prob >= 0.0 && overlap_prob <= 1.0, "scenario.overlap_prob",
          "must lie in [0, 1]");
  require(active_subbands_min >= 1 && active_subbands_max >= active_subbands_min,
          "scenario.active_subbands_min", "must satisfy 1 <= min <= max");
  require(clutter_rate_audio >= 0.0 && clutter_rate_audio <= 1.0, "scenario.clutter_rate_audio",
          "must lie in [0, 1]");
  require(audio_noise_scale >= 0.0, "scenario.audio_noise_scale", "must be >= 0");
  require(strip_width > 0.0 && strip_width <= image_size.x(), "scenario.strip_width",
          "must lie in (0, image width]");
  require(static_cast<int>(persons.size()) <= n_persons, "scenario.persons",
          "more scripts than persons");
  require(mapping.K >= 1, "scenario.mapping.K", "must be >= 1");
  require(mapping.J >= 1, "scenario.mapping.J", "must be >= 1");
  require(mapping.R >= 1, "scenario.mapping.R", "must be >= 1");
  require(mapping.slope > 0.0, "scenario.mapping.slope", "must be positive");
  require(mapping.noise_std > 0.0, "scenario.mapping.noise_std", "must be positive");
  require(mapping.curvature >= 0.0, "scenario.mapping.curvature", "must be >= 0");
  require(mapping.sigma_doa > 0.0, "scenario.mapping.sigma_doa", "must be positive");
  require(mapping.n_train_pairs >= 0, "scenario.mapping.n_train_pairs", "must be >= 0");
  require(mapping.source != MappingSource::kFile || !mapping.path.empty(), "scenario.mapping.path",
          "required when source is 'file'");
}

double ScenarioConfig::visible_lo() const {
  return fov == FieldOfView::kFull ? 0.0 : 0.5 * (image_size.x() - strip_width);
}
double ScenarioConfig::visible_hi() const {
  return fov == FieldOfView::kFull ? image_size.x() : 0.5 * (image_size.x() + strip_width);
}
bool ScenarioConfig::visible(const Vec2& center) const {
  return fov == FieldOfView::kFull || (center.x() >= visible_lo() && center.x() <= visible_hi());
}
Mat4 ScenarioConfig::visual_noise_cov() const {
  return visual_noise_std.array().square().matrix().asDiagonal();
}

GroundTruth generate_trajectories(const ScenarioConfig& c) {
  c.validate();
  const int N = c.n_persons;
  const int T = c.n_frames;
  GroundTruth gt;
  gt.frames.assign(T, std::vector<PersonFrame>(N));

  Rng init(derive_seed(c.seed, 0, kInit));
  std::vector<Vec6> state(N);
  for (int n = 0; n < N; ++n) {
    Vec6 s = make_state(Vec2(uniform(init, 0.0, c.image_size.x()), uniform(init, 0.0, c.image_size.y())),
                        Vec2(uniform(init, c.size_min.x(), c.size_max.x()),
                             uniform(init, c.size_min.y(), c.size_max.y())),
                        Vec2::Zero());
    const auto* sc = script_of(c, n);
    if (sc != nullptr && sc->initial_state) s = *sc->initial_state;
    state[n] = s;
    gt.prototypes.push_back(
        sample_dirichlet(Eigen::VectorXd::Constant(c.appearance_dim, c.prototype_concentration), init));
  }

  const Mat6 D = constant_velocity_transition();
  for (int t = 0; t < T; ++t) {
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(t), kDynamics));
    for (int n = 0; n < N; ++n) {
      Vec6 z;
      for (int i = 0; i < 6; ++i) z(i) = sample_standard_normal(rng);
      const auto* sc = script_of(c, n);
      const int enter = sc != nullptr ? sc->enter_frame : 0;
      if (t > enter) {
        const double scale = sc != nullptr ? sc->noise_scale : 1.0;
        Vec6 s = D * state[n] + scale * c.dynamics_noise_std.cwiseProduct(z);
        reflect(s(0), s(4), c.image_size.x());
        reflect(s(1), s(5), c.image_size.y());
        s(2) = std::clamp(s(2), c.size_min.x() * 0.5, c.max_box);
        s(3) = std::clamp(s(3), c.size_min.y() * 0.5, c.max_box);
        state[n] = s;
      }
      auto& pf = gt.frames[t][n];
      pf.id = n + 1;
      pf.state = state[n];
      pf.present = present_at(c, n, t);
    }
  }

  // Turn-taking among the persons in auto mode.
  Rng speech(derive_seed(c.seed, 0, kSpeech));
  std::vector<int> pool;
  for (int n = 0; n < N; ++n) {
    const auto* sc = script_of(c, n);
    if (sc == nullptr || sc->speech == SpeechMode::kAuto) pool.push_back(n);
  }
  auto mark = [&](int n, int from, int to) {
    for (int t = std::max(0, from); t < std::min(T, to); ++t) {
      if (gt.frames[t][n].present) gt.frames[t][n].speaking = true;
    }
  };
  int t = 0;
  while (t < T && !pool.empty()) {
    t += segment_length(speech, c.gap_mean, c.min_segment);
    const int len = segment_length(speech, c.turn_mean, c.min_segment);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const int main = pool[pick(speech)];
    const double join = uniform(speech, 0.0, 1.0);
    const std::size_t other_idx = pool.size() > 1 ? pick(speech) : 0;
    const int offset = static_cast<int>(uniform(speech, 0.0, 1.0) * (len - c.min_segment + 1));
    if (t < T) {
      mark(main, t, t + len);
      if (pool.size() > 1 && join < c.overlap_prob) {
        int other = pool[other_idx];
        if (other == main) other = pool[(other_idx + 1) % pool.size()];
        const int olen = std::max(c.min_segment, (len - offset) / 2);
        mark(other, t + offset, t + offset + olen);
      }
    }
    t += len;
  }
  for (int n = 0; n < N; ++n) {
    const auto* sc = script_of(c, n);
    if (sc == nullptr || sc->speech == SpeechMode::kAuto) continue;
    for (int k = 0; k < T; ++k) {
      gt.frames[k][n].speaking = sc->speech == SpeechMode::kAlways && gt.frames[k][n].present;
    }
  }
  return gt;
}

std::vector<std::vector<VisualObservation>> render_visual(const GroundTruth& gt,
                                                          const ScenarioConfig& c,
                                                          bool apply_mask) {
  const int T = static_cast<int>(gt.frames.size());
  const Mat4 phi = c.visual_noise_cov();
  const Mat46 P = box_projection();
  std::vector<std::vector<VisualObservation>> out(T);
  for (int t = 0; t < T; ++t) {
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(t), kVisual));
    std::vector<VisualObservation> frame;
    for (std::size_t n = 0; n < gt.frames[t].size(); ++n) {
      const auto& pf = gt.frames[t][n];
      // Draw everything unconditionally so masking never shifts the stream.
      const bool detected = uniform(rng, 0.0, 1.0) < c.detection_prob;
      VisualObservation o;
      o.v = sample_gaussian(P * pf.state, phi, rng);
      o.Phi = phi;
      o.u = sample_dirichlet(c.observation_concentration * gt.prototypes[n], rng);
      if (!pf.present || !detected) continue;
      frame.push_back(std::move(o));
    }
    std::poisson_distribution<int> pois(c.clutter_rate_visual);
    const int n_clutter = c.clutter_rate_visual > 0.0 ? pois(rng) : 0;
    for (int i = 0; i < n_clutter; ++i) {
      VisualObservation o;
      o.v << uniform(rng, 0.0, c.image_size.x()), uniform(rng, 0.0, c.image_size.y()),
          uniform(rng, 1.0, c.max_box), uniform(rng, 1.0, c.max_box);
      o.Phi = phi;
      o.u = sample_uniform_simplex(c.appearance_dim, rng);
      frame.push_back(std::move(o));
    }
    if (apply_mask) {
      std::erase_if(frame, [&](const VisualObservation& o) { return !c.visible(o.v.head<2>()); });
    }
    Rng shuf(derive_seed(c.seed, static_cast<std::uint64_t>(t), kShuffle));
    std::shuffle(frame.begin(), frame.end(), shuf);
    out[t] = std::move(frame);
  }
  return out;
}

Eigen::VectorXd sample_feature(const avmap::SubbandMapping& m, const Vec2& x, double scale,
                               Rng& rng) {
  const avmap::RegionPosterior rp = avmap::region_posterior(m, x);
  std::discrete_distribution<int> pick(rp.weights.data(), rp.weights.data() + rp.weights.size());
  const auto& e = m.experts[pick(rng)];
  return sample_gaussian(e.L * x + e.l, scale * scale * e.Sigma, rng);
}

std::vector<std::vector<AudioObservation>> render_audio(const GroundTruth& gt,
                                                        const avmap::AudioMappingModel& mapping,
                                                        const ScenarioConfig& c) {
  mapping.validate();
  const int K = mapping.K();
  const int T = static_cast<int>(gt.frames.size());
  if (K < 1) throw InputError("render_audio: the mapping has no sub-bands");
  std::vector<std::vector<AudioObservation>> out(T);
  for (int t = 0; t < T; ++t) {
    std::vector<int> speakers;
    for (std::size_t n = 0; n < gt.frames[t].size(); ++n) {
      if (gt.frames[t][n].present && gt.frames[t][n].speaking) speakers.push_back(static_cast<int>(n));
    }
    if (speakers.empty()) continue;
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(t), kAudio));
    const int lo = std::min(c.active_subbands_min, K);
    const int hi = std::min(c.active_subbands_max, K);
    std::uniform_int_distribution<int> count(lo, hi);
    const int kt = count(rng);
    std::vector<int> bands(K);
    std::iota(bands.begin(), bands.end(), 0);
    for (int i = 0; i < kt; ++i) {
      std::uniform_int_distribution<int> j(i, K - 1);
      std::swap(bands[i], bands[j(rng)]);
    }
    bands.resize(kt);
    std::sort(bands.begin(), bands.end());
    std::uniform_int_distribution<std::size_t> who(0, speakers.size() - 1);
    for (int k : bands) {
      const auto& m = mapping.subbands[k];
      AudioObservation a;
      a.k = k;
      if (uniform(rng, 0.0, 1.0) < c.clutter_rate_audio) {
        a.g.resize(m.feature_dim());
        for (int d = 0; d < m.feature_dim(); ++d) a.g(d) = uniform(rng, m.feature_lo(d), m.feature_hi(d));
      } else {
        const Vec2 x = position_of(gt.frames[t][speakers[who(rng)]].state);
        a.g = sample_feature(m, x, c.audio_noise_scale, rng);
      }
      out[t].push_back(std::move(a));
    }
  }
  return out;
}

avmap::AudioMappingModel make_reference_mapping(const ScenarioConfig& c) {
  const auto& mc = c.mapping;
  Rng rng(derive_seed(c.seed, 0, kMapping));
  const int D = 2 * mc.J;
  const double W = c.image_size.x();
  const double H = c.image_size.y();
  avmap::AudioMappingModel model;
  model.mode = avmap::MappingMode::kLearned;
  for (int k = 0; k < mc.K; ++k) {
    avmap::SubbandMapping band;
    band.J = mc.J;
    Eigen::MatrixXd A(D, 2);
    Eigen::VectorXd b(D);
    for (int i = 0; i < D; ++i) {
      A(i, 0) = mc.slope * sample_standard_normal(rng);
      A(i, 1) = mc.slope * sample_standard_normal(rng);
      b(i) = sample_standard_normal(rng);
    }
    for (int r = 0; r < mc.R; ++r) {
      avmap::AffineExpert e;
      e.nu = Vec2(W * (2.0 * r + 1.0) / (2.0 * mc.R), 0.5 * H);
      const double sx = W / (4.0 * mc.R);
      e.Omega = Vec2(sx * sx, 0.25 * H * H).asDiagonal();
      e.L = A;
      for (int i = 0; i < D; ++i) {
        for (int j = 0; j < 2; ++j) e.L(i, j) += mc.curvature * mc.slope * sample_standard_normal(rng);
      }
      e.l = A * e.nu + b - e.L * e.nu;
      e.Sigma = mc.noise_std * mc.noise_std * Eigen::MatrixXd::Identity(D, D);
      e.pi = 1.0 / mc.R;
      band.experts.push_back(std::move(e));
    }
    // Feature box: every expert's prediction over a grid, padded by 4 sigma.
    band.feature_lo = Eigen::VectorXd::Constant(D, std::numeric_limits<double>::infinity());
    band.feature_hi = -band.feature_lo;
    for (int ix = 0; ix <= 8; ++ix) {
      for (int iy = 0; iy <= 8; ++iy) {
        const Vec2 x(W * ix / 8.0, H * iy / 8.0);
        for (const auto& e : band.experts) {
          const Eigen::VectorXd g = e.L * x + e.l;
          band.feature_lo = band.feature_lo.cwiseMin(g);
          band.feature_hi = band.feature_hi.cwiseMax(g);
        }
      }
    }
    band.feature_lo.array() -= 4.0 * mc.noise_std;
    band.feature_hi.array() += 4.0 * mc.noise_std;
    model.subbands.push_back(std::move(band));
  }
  model.validate();
  return model;
}

std::vector<avmap::TrainingPair> sample_training_pairs(const avmap::AudioMappingModel& mapping,
                                                       const ScenarioConfig& c, int n,
                                                       std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0, kTraining));
  std::vector<avmap::TrainingPair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    avmap::TrainingPair p;
    p.x = Vec2(uniform(rng, 0.0, c.image_size.x()), uniform(rng, 0.0, c.image_size.y()));
    p.g.resize(mapping.K(), mapping.subbands.front().feature_dim());
    for (int k = 0; k < mapping.K(); ++k) {
      p.g.row(k) = sample_feature(mapping.subbands[k], p.x, 1.0, rng).transpose();
    }
    out.push_back(std::move(p));
  }
  return out;
}

avmap::AudioMappingModel scenario_mapping(const ScenarioConfig& c) {
  switch (c.mapping.source) {
    case MappingSource::kDoa:
      return avmap::doa_point_model(c.mapping.sigma_doa, c.image_size, c.mapping.K);
    case MappingSource::kFile:
      return avmap::load_model(c.mapping.path).model;
    case MappingSource::kReference:
      break;
  }
  return make_reference_mapping(c);
}

}  // namespace vavit::sim
