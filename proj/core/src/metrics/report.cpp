// core/src/metrics/report.cpp

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

#include "vavit/metrics/report.hpp"

#include <cmath>
#include <sstream>

#include "vavit/errors.hpp"

namespace vavit::metrics {

MetricsConfig metrics_config_from_json(const Json& j) {
  MetricsConfig c;
  ConfigReader r(j, "metrics");
  r.get("iou_threshold", c.gate.iou_threshold)
      .get("point_mode", c.gate.point_mode)
      .get("point_radius", c.gate.point_radius)
      .get("blind_factor", c.gate.blind_factor)
      .get("ospa_p", c.ospa.p)
      .get("ospa_c", c.ospa.c)
      .get("ospa_alpha", c.ospa.alpha_label)
      .get("der_collar", c.der_collar)
      .get("include_dormant", c.include_dormant);
  r.finish();
  if (!(c.gate.iou_threshold > 0.0 && c.gate.iou_threshold <= 1.0)) {
    throw ConfigError("metrics.iou_threshold", "must lie in (0, 1]");
  }
  if (!(c.gate.point_radius > 0.0)) throw ConfigError("metrics.point_radius", "must be positive");
  if (!(c.gate.blind_factor > 0.0)) throw ConfigError("metrics.blind_factor", "must be positive");
  if (!(c.ospa.p >= 1.0)) throw ConfigError("metrics.ospa_p", "must be >= 1");
  if (!(c.ospa.c > 0.0)) throw ConfigError("metrics.ospa_c", "must be positive");
  if (!(c.ospa.alpha_label >= 0.0)) throw ConfigError("metrics.ospa_alpha", "must be >= 0");
  if (c.der_collar < 0) throw ConfigError("metrics.der_collar", "must be >= 0");
  return c;
}

Json to_json(const MetricsConfig& c) {
  Json j;
  j["iou_threshold"] = c.gate.iou_threshold;
  j["point_mode"] = c.gate.point_mode;
  j["point_radius"] = c.gate.point_radius;
  j["blind_factor"] = c.gate.blind_factor;
  j["ospa_p"] = c.ospa.p;
  j["ospa_c"] = c.ospa.c;
  j["ospa_alpha"] = c.ospa.alpha_label;
  j["der_collar"] = c.der_collar;
  j["include_dormant"] = c.include_dormant;
  return j;
}

TrackSet gt_track_set(const std::vector<std::vector<sim::PersonFrame>>& gt) {
  const Mat46 P = box_projection();
  TrackSet out(gt.size());
  for (std::size_t t = 0; t < gt.size(); ++t) {
    for (const auto& p : gt[t]) {
      if (p.present) out[t].push_back({p.id, P * p.state, p.speaking});
    }
  }
  return out;
}

TrackSet est_track_set(const std::vector<tracker::FrameOutput>& out, bool include_dormant) {
  const Mat46 P = box_projection();
  TrackSet s(out.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (const auto& tr : out[t].tracks) {
      if (tr.dormant && !include_dormant) continue;
      s[t].push_back({tr.id, P * tr.belief.mean, tr.speaking});
    }
  }
  return s;
}

SpeechActivity gt_speech(const TrackSet& gt) {
  SpeechActivity s(gt.size());
  for (std::size_t t = 0; t < gt.size(); ++t) {
    for (const auto& it : gt[t]) {
      if (it.speaking) s[t].insert(it.id);
    }
  }
  return s;
}

SpeechActivity est_speech(const TrackSet& est, const std::map<int, int>& correspondence,
                          int fresh_base) {
  SpeechActivity s(est.size());
  for (std::size_t t = 0; t < est.size(); ++t) {
    for (const auto& it : est[t]) {
      if (!it.speaking) continue;
      auto c = correspondence.find(it.id);
      s[t].insert(c != correspondence.end() ? c->second : fresh_base + it.id);
    }
  }
  return s;
}

EvaluationReport evaluate(const TrackSet& gt, const TrackSet& est, const MetricsConfig& config) {
  EvaluationReport r;
  r.params = config;
  r.mot = evaluate_mot(gt, est, config.gate);
  r.ospa = ospa_t(gt, est, config.ospa);

  double se = 0.0;
  for (std::size_t t = 0; t < gt.size(); ++t) {
    for (const auto& [g, e] : r.mot.frames[t].matches) {
      Vec2 a = Vec2::Zero(), b = Vec2::Zero();
      for (const auto& it : gt[t]) {
        if (it.id == g) a = it.box.head<2>();
      }
      for (const auto& it : est[t]) {
        if (it.id == e) b = it.box.head<2>();
      }
      se += (a - b).squaredNorm();
      ++r.matched;
    }
  }
  r.position_rmse = r.matched > 0 ? std::sqrt(se / static_cast<double>(r.matched)) : 0.0;

  const SpeechActivity gs = gt_speech(gt);
  bool any = false;
  int max_gt = 0;
  for (std::size_t t = 0; t < gt.size(); ++t) {
    any = any || !gs[t].empty();
    for (const auto& it : gt[t]) max_gt = std::max(max_gt, it.id);
  }
  if (any) {
    const auto corr = majority_correspondence(r.mot.frames);
    const SpeechActivity es = est_speech(est, corr, max_gt + 1);
    try {
      r.der = der(gs, es, config.der_collar);
    } catch (const UndefinedScoreError&) {
      r.der.reset();  // all speech fell inside the collar
    }
  }
  return r;
}

void apply_fov(MetricsConfig& config, const sim::ScenarioConfig& scenario) {
  config.gate.partial_fov = scenario.fov == sim::FieldOfView::kPartial;
  config.gate.visible_lo = scenario.visible_lo();
  config.gate.visible_hi = scenario.visible_hi();
}

Json report_to_json(const EvaluationReport& r, const Json& echo) {
  Json j;
  Json mot;
  mot["mota"] = r.mot.mota;
  mot["fp"] = r.mot.fp;
  mot["fn"] = r.mot.fn;
  mot["ids"] = r.mot.ids;
  mot["gt"] = r.mot.gt;
  mot["mt"] = r.mot.mt;
  mot["ml"] = r.mot.ml;
  mot["trajectories"] = r.mot.trajectories;
  j["mot"] = std::move(mot);
  Json ospa;
  ospa["mean"] = r.ospa.mean;
  ospa["per_frame"] = r.ospa.per_frame;
  j["ospa_t"] = std::move(ospa);
  if (r.der) {
    Json d;
    d["der"] = r.der->der;
    d["miss"] = r.der->miss;
    d["false_alarm"] = r.der->false_alarm;
    d["confusion"] = r.der->confusion;
    d["scored_speech"] = r.der->scored_speech;
    j["der"] = std::move(d);
  } else {
    j["der"] = nullptr;
  }
  j["position_rmse"] = r.position_rmse;
  j["matched"] = r.matched;
  Json params = to_json(r.params);
  params["partial_fov"] = r.params.gate.partial_fov;
  params["visible_lo"] = r.params.gate.visible_lo;
  params["visible_hi"] = r.params.gate.visible_hi;
  j["params"] = std::move(params);
  j["config"] = echo;
  return j;
}

std::string report_csv(const EvaluationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "t,ospa,fp,fn,ids\n";
  for (std::size_t t = 0; t < r.mot.frames.size(); ++t) {
    const auto& ev = r.mot.frames[t];
    os << t << ',' << r.ospa.per_frame[t] << ',' << ev.fp << ',' << ev.fn << ',' << ev.ids << '\n';
  }
  return os.str();
}

}  // namespace vavit::metrics
