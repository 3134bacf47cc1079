// core/src/sim/io.cpp

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

#include "vavit/sim/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vavit/avmap/io.hpp"
#include "vavit/errors.hpp"
#include "vavit/tracker/io.hpp"

namespace vavit::sim {

namespace {

const char* fov_name(FieldOfView f) { return f == FieldOfView::kFull ? "full" : "partial"; }

const char* speech_name(SpeechMode m) {
  switch (m) {
    case SpeechMode::kAlways: return "always";
    case SpeechMode::kNever: return "never";
    case SpeechMode::kAuto: break;
  }
  return "auto";
}

const char* source_name(MappingSource s) {
  switch (s) {
    case MappingSource::kDoa: return "doa";
    case MappingSource::kFile: return "file";
    case MappingSource::kReference: break;
  }
  return "reference";
}

template <typename E>
E parse_enum(const std::string& field, const std::string& v,
             std::initializer_list<std::pair<const char*, E>> options) {
  std::string allowed;
  for (const auto& [name, e] : options) {
    if (v == name) return e;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw ConfigError(field, "must be one of " + allowed);
}

ReferenceMappingConfig mapping_from_json(const Json& j) {
  ReferenceMappingConfig m;
  ConfigReader r(j, "scenario.mapping");
  std::string source = source_name(m.source);
  r.get("source", source)
      .get("K", m.K)
      .get("J", m.J)
      .get("R", m.R)
      .get("slope", m.slope)
      .get("noise_std", m.noise_std)
      .get("curvature", m.curvature)
      .get("sigma_doa", m.sigma_doa)
      .get("path", m.path)
      .get("n_train_pairs", m.n_train_pairs);
  r.finish();
  m.source = parse_enum<MappingSource>(r.field("source"), source,
                                       {{"reference", MappingSource::kReference},
                                        {"doa", MappingSource::kDoa},
                                        {"file", MappingSource::kFile}});
  return m;
}

PersonScript script_from_json(const Json& j, std::size_t index) {
  PersonScript s;
  ConfigReader r(j, "scenario.persons[" + std::to_string(index) + "]");
  if (r.find("initial_state") != nullptr) {
    Vec6 v;
    r.vec("initial_state", v);
    s.initial_state = v;
  }
  std::string speech = speech_name(s.speech);
  r.get("enter_frame", s.enter_frame)
      .get("exit_frame", s.exit_frame)
      .get("speech", speech)
      .get("noise_scale", s.noise_scale);
  r.finish();
  s.speech = parse_enum<SpeechMode>(r.field("speech"), speech,
                                    {{"auto", SpeechMode::kAuto},
                                     {"always", SpeechMode::kAlways},
                                     {"never", SpeechMode::kNever}});
  return s;
}

}  // namespace

ScenarioConfig scenario_config_from_json(const Json& j) {
  ScenarioConfig c;
  ConfigReader r(j, "scenario");
  std::string fov = fov_name(c.fov);
  r.get("n_persons", c.n_persons)
      .get("n_frames", c.n_frames)
      .vec("image_size", c.image_size)
      .vec("dynamics_noise_std", c.dynamics_noise_std)
      .vec("size_min", c.size_min)
      .vec("size_max", c.size_max)
      .get("detection_prob", c.detection_prob)
      .get("clutter_rate_visual", c.clutter_rate_visual)
      .get("max_box", c.max_box)
      .vec("visual_noise_std", c.visual_noise_std)
      .get("appearance_dim", c.appearance_dim)
      .get("prototype_concentration", c.prototype_concentration)
      .get("observation_concentration", c.observation_concentration)
      .get("turn_mean", c.turn_mean)
      .get("gap_mean", c.gap_mean)
      .get("min_segment", c.min_segment)
      .get("overlap_prob", c.overlap_prob)
      .get("active_subbands_min", c.active_subbands_min)
      .get("active_subbands_max", c.active_subbands_max)
      .get("clutter_rate_audio", c.clutter_rate_audio)
      .get("audio_noise_scale", c.audio_noise_scale)
      .get("fov", fov)
      .get("strip_width", c.strip_width)
      .get("seed", c.seed);
  if (const Json* m = r.object("mapping")) c.mapping = mapping_from_json(*m);
  if (const Json* found = r.find("persons")) {
    const Json& ps = *found;
    if (!ps.is_array()) throw ConfigError("scenario.persons", "must be an array");
    for (std::size_t i = 0; i < ps.size(); ++i) c.persons.push_back(script_from_json(ps[i], i));
  }
  r.finish();
  c.fov = parse_enum<FieldOfView>(r.field("fov"), fov,
                                  {{"full", FieldOfView::kFull}, {"partial", FieldOfView::kPartial}});
  c.validate();
  return c;
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["n_persons"] = c.n_persons;
  j["n_frames"] = c.n_frames;
  j["image_size"] = vector_to_json(c.image_size);
  j["dynamics_noise_std"] = vector_to_json(c.dynamics_noise_std);
  j["size_min"] = vector_to_json(c.size_min);
  j["size_max"] = vector_to_json(c.size_max);
  j["detection_prob"] = c.detection_prob;
  j["clutter_rate_visual"] = c.clutter_rate_visual;
  j["max_box"] = c.max_box;
  j["visual_noise_std"] = vector_to_json(c.visual_noise_std);
  j["appearance_dim"] = c.appearance_dim;
  j["prototype_concentration"] = c.prototype_concentration;
  j["observation_concentration"] = c.observation_concentration;
  j["turn_mean"] = c.turn_mean;
  j["gap_mean"] = c.gap_mean;
  j["min_segment"] = c.min_segment;
  j["overlap_prob"] = c.overlap_prob;
  j["active_subbands_min"] = c.active_subbands_min;
  j["active_subbands_max"] = c.active_subbands_max;
  j["clutter_rate_audio"] = c.clutter_rate_audio;
  j["audio_noise_scale"] = c.audio_noise_scale;
  Json m;
  m["source"] = source_name(c.mapping.source);
  m["K"] = c.mapping.K;
  m["J"] = c.mapping.J;
  m["R"] = c.mapping.R;
  m["slope"] = c.mapping.slope;
  m["noise_std"] = c.mapping.noise_std;
  m["curvature"] = c.mapping.curvature;
  m["sigma_doa"] = c.mapping.sigma_doa;
  m["path"] = c.mapping.path;
  m["n_train_pairs"] = c.mapping.n_train_pairs;
  j["mapping"] = std::move(m);
  j["fov"] = fov_name(c.fov);
  j["strip_width"] = c.strip_width;
  Json ps = Json::array();
  for (const auto& s : c.persons) {
    Json p;
    if (s.initial_state) p["initial_state"] = vector_to_json(*s.initial_state);
    p["enter_frame"] = s.enter_frame;
    p["exit_frame"] = s.exit_frame;
    p["speech"] = speech_name(s.speech);
    p["noise_scale"] = s.noise_scale;
    ps.push_back(std::move(p));
  }
  j["persons"] = std::move(ps);
  j["seed"] = c.seed;
  return j;
}

Json gt_frame_to_json(int t, const std::vector<PersonFrame>& frame) {
  Json j;
  j["t"] = t;
  Json arr = Json::array();
  for (const auto& p : frame) {
    Json o;
    o["id"] = p.id;
    o["s"] = vector_to_json(p.state);
    o["speaking"] = p.speaking;
    o["present"] = p.present;
    arr.push_back(std::move(o));
  }
  j["persons"] = std::move(arr);
  return j;
}

std::vector<PersonFrame> gt_frame_from_json(const Json& j) {
  std::vector<PersonFrame> out;
  try {
    for (const auto& o : json_at(j, "persons")) {
      PersonFrame p;
      p.id = json_at(o, "id").get<int>();
      p.state = json_to_vector(json_at(o, "s"), "s", 6);
      p.speaking = json_at(o, "speaking").get<bool>();
      p.present = json_at(o, "present").get<bool>();
      out.push_back(p);
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed ground-truth record: ") + e.what());
  }
  return out;
}

Json training_pair_to_json(const avmap::TrainingPair& p) {
  Json j;
  j["x"] = vector_to_json(p.x);
  j["g"] = matrix_to_json(p.g);
  return j;
}

avmap::TrainingPair training_pair_from_json(const Json& j) {
  avmap::TrainingPair p;
  p.x = json_to_vector(json_at(j, "x"), "x", 2);
  p.g = json_to_matrix(json_at(j, "g"), "g");
  return p;
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<Json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw InputError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::string& path, const std::vector<Json>& lines) {
  std::string s;
  for (const auto& l : lines) {
    s += l.dump();
    s += '\n';
  }
  write_text_file(path, s);
}

Bundle simulate(const ScenarioConfig& config) {
  Bundle b;
  b.config = config;
  b.gt = generate_trajectories(config);
  b.visuals = render_visual(b.gt, config);
  b.mapping = scenario_mapping(config);
  b.audios = render_audio(b.gt, b.mapping, config);
  if (config.mapping.source == MappingSource::kReference && config.mapping.n_train_pairs > 0) {
    b.training_pairs = sample_training_pairs(b.mapping, config, config.mapping.n_train_pairs,
                                             derive_seed(config.seed, 1, 0));
  }
  return b;
}

void write_bundle(const std::string& dir, const Bundle& b, const Json& echo) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + dir + "': " + ec.message());
  const fs::path d(dir);
  const int T = static_cast<int>(b.gt.frames.size());
  std::vector<Json> gt, vis, aud;
  for (int t = 0; t < T; ++t) {
    gt.push_back(gt_frame_to_json(t, b.gt.frames[t]));
    vis.push_back(tracker::visuals_to_json(t, b.visuals[t]));
    aud.push_back(tracker::audios_to_json(t, b.audios[t]));
  }
  write_jsonl((d / "gt.jsonl").string(), gt);
  write_jsonl((d / "visual.jsonl").string(), vis);
  write_jsonl((d / "audio.jsonl").string(), aud);
  avmap::save_model((d / "reference_model.json").string(), b.mapping);
  Json files = Json::array({"gt.jsonl", "visual.jsonl", "audio.jsonl", "reference_model.json"});
  if (!b.training_pairs.empty()) {
    std::vector<Json> pairs;
    for (const auto& p : b.training_pairs) pairs.push_back(training_pair_to_json(p));
    write_jsonl((d / "train_pairs.jsonl").string(), pairs);
    files.push_back("train_pairs.jsonl");
  }
  Json meta;
  meta["config"] = echo;
  meta["seed"] = b.config.seed;
  meta["n_frames"] = T;
  meta["n_persons"] = b.config.n_persons;
  meta["K"] = b.mapping.K();
  meta["J"] = b.mapping.J();
  meta["files"] = std::move(files);
  meta["gt_fields"] = Json::array({"t", "persons[id, s[6], speaking, present]"});
  meta["visual_fields"] = Json::array({"t", "visuals[v[4], Phi[4][4], u[d]]"});
  meta["audio_fields"] = Json::array({"t", "audios[k, g[2J]]"});
  Json protos = Json::array();
  for (const auto& h : b.gt.prototypes) protos.push_back(vector_to_json(h));
  meta["prototypes"] = std::move(protos);
  write_text_file((d / "scenario.meta.json").string(), meta.dump(1) + "\n");
}

namespace {

template <typename F>
auto read_stream(const std::string& path, F parse) {
  std::vector<decltype(parse(Json()))> out;
  const auto lines = read_jsonl(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int t = -1;
    try {
      t = json_at(lines[i], "t").get<int>();
    } catch (const Json::exception&) {
    }
    if (t != static_cast<int>(i)) {
      throw InputError(path + ": frame index " + std::to_string(t) + " found where " +
                       std::to_string(i) + " was expected");
    }
    try {
      out.push_back(parse(lines[i]));
    } catch (const InputError& e) {
      throw InputError(path + ": frame " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<PersonFrame>> read_gt(const std::string& path) {
  return read_stream(path, [](const Json& j) { return gt_frame_from_json(j); });
}

std::vector<std::vector<VisualObservation>> read_visual_stream(const std::string& path) {
  return read_stream(path, [](const Json& j) { return tracker::visuals_from_json(j); });
}

std::vector<std::vector<AudioObservation>> read_audio_stream(const std::string& path) {
  return read_stream(path, [](const Json& j) { return tracker::audios_from_json(j); });
}

}  // namespace vavit::sim
