// vavit/metrics/der.hpp

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

#include <set>
#include <vector>

namespace vavit::metrics {

/// Speaking persons per frame. Estimated ids must already be expressed in
/// ground-truth ids (see majority_correspondence); unmatched estimates keep
/// ids that no ground-truth person uses.
using SpeechActivity = std::vector<std::set<int>>;

struct DerBreakdown {
  double der = 0.0;  // percent
  long miss = 0;
  long false_alarm = 0;
  long confusion = 0;
  long scored_speech = 0;  // ground-truth speaker-frames outside the collar
  long scored_frames = 0;
};

/// Frame-level diarization error rate with a +/- `collar` frame exclusion
/// zone around every ground-truth speaker change:
///   100 (miss + false alarm + confusion) / scored ground-truth speech.
/// Per frame, miss = max(0, |G| - |E|), false alarm = max(0, |E| - |G|),
/// confusion = min(|G|, |E|) - |G n E|. Throws UndefinedScoreError when no
/// ground-truth speech remains.
DerBreakdown der(const SpeechActivity& gt, const SpeechActivity& est, int collar = 6);

}  // namespace vavit::metrics
