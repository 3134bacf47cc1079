// tools/cli/commands.cpp

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

#include "cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "vavit/avmap/io.hpp"
#include "vavit/errors.hpp"
#include "vavit/sim/io.hpp"
#include "vavit/tracker/io.hpp"
#include "vavit/tracker/tracker.hpp"

namespace vavit::cli {

namespace fs = std::filesystem;

namespace {

Json sidecar(const RunConfig& config, Json extra = Json::object()) {
  Json j;
  j["config"] = to_json(config);
  j["seed"] = config.seed;
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

void write_sidecar(const std::string& path, const Json& meta) {
  write_text_file(path + ".meta.json", meta.dump(1) + "\n");
}

std::vector<avmap::TrainingPair> read_pairs(const std::string& path) {
  std::vector<avmap::TrainingPair> pairs;
  const auto lines = sim::read_jsonl(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      pairs.push_back(sim::training_pair_from_json(lines[i]));
    } catch (const Error& e) {
      throw InputError(path + ":" + std::to_string(i + 1) + ": " + e.what());
    } catch (const Json::exception& e) {
      throw InputError(path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return pairs;
}

avmap::TrainingResult train_and_save(const RunConfig& config,
                                     const std::vector<avmap::TrainingPair>& pairs,
                                     const std::string& out_model, std::ostream& out) {
  avmap::TrainingResult res = avmap::train_mapping(pairs, config.training);
  Json meta;
  meta["seed"] = config.seed;
  meta["training"] = to_json(config)["training"];
  meta["pairs"] = pairs.size();
  meta["warnings"] = res.warning_count();
  Json bands = Json::array();
  for (std::size_t k = 0; k < res.subbands.size(); ++k) {
    const auto& s = res.subbands[k];
    Json b;
    b["loglik"] = s.loglik_trace.empty() ? 0.0 : s.loglik_trace.back();
    b["iterations"] = s.iterations;
    b["converged"] = s.converged;
    b["regularized"] = s.regularized;
    b["residual_rms"] = s.residual_rms;
    bands.push_back(std::move(b));
    out << "subband " << k << ": loglik " << std::setprecision(10)
        << (s.loglik_trace.empty() ? 0.0 : s.loglik_trace.back()) << " iterations " << s.iterations
        << " residual " << s.residual_rms << "\n";
  }
  meta["subbands"] = std::move(bands);
  avmap::save_model(out_model, res.model, meta);
  return res;
}

std::string scenario_file(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

sim::ScenarioConfig scenario_from_meta(const std::string& dir) {
  const std::string path = scenario_file(dir, "scenario.meta.json");
  Json meta;
  try {
    meta = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  const Json& echo = json_at(json_at(meta, "config"), "scenario");
  return sim::scenario_config_from_json(echo);
}

}  // namespace

int cmd_train_mapping(const RunConfig& config, const std::string& pairs_path,
                      const std::string& out_model, std::ostream& out) {
  const auto pairs = read_pairs(pairs_path);
  train_and_save(config, pairs, out_model, out);
  return kOk;
}

int cmd_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& out) {
  const sim::Bundle b = sim::simulate(config.scenario);
  sim::write_bundle(out_dir, b, to_json(config));
  out << "simulated " << b.gt.frames.size() << " frames, " << config.scenario.n_persons
      << " persons into " << out_dir << "\n";
  return kOk;
}

int cmd_track(const RunConfig& config, const std::string& scenario_dir,
              const std::string& model_path, const std::string& out_path, const TrackFlags& flags,
              std::ostream& out) {
  if (flags.visual_only && flags.audio_only) {
    throw ConfigError("--visual-only", "cannot be combined with --audio-only");
  }
  const auto visuals = sim::read_visual_stream(scenario_file(scenario_dir, "visual.jsonl"));
  auto audios = sim::read_audio_stream(scenario_file(scenario_dir, "audio.jsonl"));
  if (visuals.size() != audios.size()) {
    throw InputError("visual.jsonl and audio.jsonl hold different numbers of frames");
  }

  std::shared_ptr<const avmap::AudioMappingModel> mapping;
  if (flags.visual_only) {
    for (auto& a : audios) a.clear();
  } else if (flags.doa_mode) {
    int K = config.scenario.mapping.K;
    for (const auto& a : audios) {
      for (const auto& o : a) K = std::max(K, o.k + 1);
    }
    mapping = std::make_shared<avmap::AudioMappingModel>(avmap::doa_point_model(
        config.scenario.mapping.sigma_doa, config.tracker.image_size, K));
  } else {
    if (model_path.empty()) throw InputError("a model file is required (or --doa-mode)");
    mapping = std::make_shared<avmap::AudioMappingModel>(avmap::load_model(model_path).model);
  }
  if (mapping) {
    for (std::size_t t = 0; t < audios.size(); ++t) {
      for (const auto& a : audios[t]) {
        if (a.k >= mapping->K()) {
          throw InputError("frame " + std::to_string(t) + ": sub-band " + std::to_string(a.k) +
                           " but the model has K = " + std::to_string(mapping->K()));
        }
        if (a.g.size() != mapping->subbands[a.k].feature_dim()) {
          throw InputError("frame " + std::to_string(t) + ": feature dimension " +
                           std::to_string(a.g.size()) + " does not match the model");
        }
      }
    }
  }

  tracker::TrackerConfig tc = config.tracker;
  if (flags.audio_only) tc.visual_state_update = false;
  tracker::Tracker trk(tc, mapping);
  std::string lines;
  int births = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < visuals.size(); ++t) {
    FrameObservations f{visuals[t], audios[t]};
    const tracker::FrameOutput o = trk.step(f);
    births += static_cast<int>(o.births.size());
    lines += tracker::dump_line(tracker::frame_output_to_json(o));
    lines += '\n';
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text_file(out_path, lines);
  Json flags_json;
  flags_json["visual_only"] = flags.visual_only;
  flags_json["audio_only"] = flags.audio_only;
  flags_json["doa_mode"] = flags.doa_mode;
  Json extra;
  extra["flags"] = flags_json;
  // Relative to the output so that identical runs in different directories
  // produce identical files.
  const fs::path rel = fs::path(model_path).lexically_relative(fs::absolute(out_path).parent_path());
  extra["model"] = model_path.empty() || rel.empty() ? model_path : rel.string();
  extra["frames"] = visuals.size();
  extra["births"] = births;
  extra["record_fields"] = Json::array({"t", "tracks[id, mu[6], gamma[6][6], speaking, dormant]", "births"});
  write_sidecar(out_path, sidecar(config, extra));
  out << "tracked " << visuals.size() << " frames: " << births << " tracks born, "
      << std::fixed << std::setprecision(3)
      << (visuals.empty() ? 0.0 : 1e3 * secs / static_cast<double>(visuals.size()))
      << " ms/frame\n";
  out.unsetf(std::ios::floatfield);
  return kOk;
}

int cmd_evaluate(const RunConfig& config, const std::string& scenario_dir,
                 const std::string& track_path, const std::string& report_path, std::ostream& out) {
  const auto gt = sim::read_gt(scenario_file(scenario_dir, "gt.jsonl"));
  std::vector<tracker::FrameOutput> est;
  const auto lines = sim::read_jsonl(track_path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    est.push_back(tracker::frame_output_from_json(lines[i]));
    if (est.back().t != static_cast<int>(i)) {
      throw InputError(track_path + ": frame index gap at line " + std::to_string(i + 1));
    }
  }
  if (est.size() != gt.size()) {
    throw InputError("track file has " + std::to_string(est.size()) + " frames, ground truth " +
                     std::to_string(gt.size()));
  }
  metrics::MetricsConfig mc = config.metrics;
  metrics::apply_fov(mc, scenario_from_meta(scenario_dir));
  const auto report = metrics::evaluate(metrics::gt_track_set(gt),
                                        metrics::est_track_set(est, mc.include_dormant), mc);
  write_text_file(report_path, metrics::report_to_json(report, to_json(config)).dump(1) + "\n");
  fs::path csv(report_path);
  csv.replace_extension(".csv");
  write_text_file(csv.string(), metrics::report_csv(report));
  out << std::fixed << std::setprecision(2) << "MOTA " << report.mot.mota << "  OSPA-T "
      << report.ospa.mean << "  DER ";
  if (report.der) {
    out << report.der->der;
  } else {
    out << "n/a";
  }
  out << "\n";
  out.unsetf(std::ios::floatfield);
  return kOk;
}

int cmd_run_e2e(const RunConfig& config, const std::string& out_dir, const TrackFlags& flags,
                std::ostream& out) {
  const fs::path dir(out_dir);
  const std::string scen = (dir / "scenario").string();
  cmd_simulate(config, scen, out);
  std::string model;
  if (!flags.visual_only && !flags.doa_mode) {
    switch (config.scenario.mapping.source) {
      case sim::MappingSource::kReference: {
        model = (dir / "model.json").string();
        const auto pairs = read_pairs((fs::path(scen) / "train_pairs.jsonl").string());
        train_and_save(config, pairs, model, out);
        break;
      }
      case sim::MappingSource::kDoa:
        model = (fs::path(scen) / "reference_model.json").string();
        break;
      case sim::MappingSource::kFile:
        model = config.scenario.mapping.path;
        break;
    }
  }
  const std::string tracks = (dir / "tracks.jsonl").string();
  cmd_track(config, scen, model, tracks, flags, out);
  return cmd_evaluate(config, scen, tracks, (dir / "report.json").string(), out);
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vavit: variational audio-visual multi-person tracking"};
  app.require_subcommand(1);
  app.footer(config_reference());

  std::string config_path;
  std::optional<std::uint64_t> seed;
  TrackFlags flags;
  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--seed", seed, "Seed; overrides VAVIT_SEED and the config file");

  std::string pairs, model, out_path, scenario_dir, tracks, report;
  auto* train = app.add_subcommand("train-mapping", "Fit the audio mapping from training pairs");
  train->add_option("--pairs", pairs, "Training pairs (JSONL of {x, g})")->required();
  train->add_option("--out", out_path, "Output model file")->required();

  auto* simulate = app.add_subcommand("simulate", "Generate a scenario bundle");
  simulate->add_option("--out", out_path, "Output directory")->required();

  auto add_flags = [&](CLI::App* sub) {
    sub->add_flag("--visual-only", flags.visual_only, "Ignore audio observations");
    sub->add_flag("--audio-only", flags.audio_only,
                  "Keep visual boxes out of the state update");
    sub->add_flag("--doa-mode", flags.doa_mode, "Treat audio features as DOA points");
  };
  auto* track = app.add_subcommand("track", "Run the tracker over a scenario bundle");
  track->add_option("--scenario", scenario_dir, "Scenario directory")->required();
  track->add_option("--model", model, "Audio mapping model file");
  track->add_option("--out", out_path, "Output track records (JSONL)")->required();
  add_flags(track);

  auto* evaluate = app.add_subcommand("evaluate", "Score tracks against ground truth");
  evaluate->add_option("--scenario", scenario_dir, "Scenario directory")->required();
  evaluate->add_option("--tracks", tracks, "Track records (JSONL)")->required();
  evaluate->add_option("--report", report, "Report file (JSON); CSV written alongside")->required();

  auto* e2e = app.add_subcommand("run-e2e", "simulate, train-mapping, track and evaluate");
  e2e->add_option("--out", out_path, "Output directory")->required();
  add_flags(e2e);

  for (auto* sub : {train, simulate, track, evaluate, e2e}) {
    sub->add_option("--config", config_path, "Run configuration (JSON)");
    sub->add_option("--seed", seed, "Seed; overrides VAVIT_SEED and the config file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const RunConfig config = load_run_config(config_path, seed);
    if (train->parsed()) return cmd_train_mapping(config, pairs, out_path, out);
    if (simulate->parsed()) return cmd_simulate(config, out_path, out);
    if (track->parsed()) return cmd_track(config, scenario_dir, model, out_path, flags, out);
    if (evaluate->parsed()) return cmd_evaluate(config, scenario_dir, tracks, report, out);
    if (e2e->parsed()) return cmd_run_e2e(config, out_path, flags, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kInputError;
}

}  // namespace vavit::cli
