// tools/cli/commands.hpp

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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cli/run_config.hpp"

namespace vavit::cli {

/// Stable process exit codes.
enum ExitCode : int { kOk = 0, kInputError = 2, kRuntimeError = 3 };

struct TrackFlags {
  bool visual_only = false;
  bool audio_only = false;
  bool doa_mode = false;
};

int cmd_train_mapping(const RunConfig& config, const std::string& pairs_path,
                      const std::string& out_model, std::ostream& out);
int cmd_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& out);
/// `model_path` may be empty with --doa-mode or --visual-only.
int cmd_track(const RunConfig& config, const std::string& scenario_dir,
              const std::string& model_path, const std::string& out_path, const TrackFlags& flags,
              std::ostream& out);
/// Also writes the per-frame CSV next to the report (".csv" extension).
int cmd_evaluate(const RunConfig& config, const std::string& scenario_dir,
                 const std::string& track_path, const std::string& report_path, std::ostream& out);
/// simulate -> train-mapping (learned mode) -> track -> evaluate into `out_dir`.
int cmd_run_e2e(const RunConfig& config, const std::string& out_dir, const TrackFlags& flags,
                std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vavit::cli
