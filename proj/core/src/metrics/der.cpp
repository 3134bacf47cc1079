// core/src/metrics/der.cpp

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

#include "vavit/metrics/der.hpp"

#include <algorithm>

#include "vavit/errors.hpp"

namespace vavit::metrics {

DerBreakdown der(const SpeechActivity& gt, const SpeechActivity& est, int collar) {
  if (gt.size() != est.size()) throw InputError("DER needs aligned frame ranges");
  if (collar < 0) throw InputError("DER collar must be >= 0");
  const int T = static_cast<int>(gt.size());
  std::vector<bool> excluded(T, false);
  if (collar > 0) {
    for (int t = 1; t < T; ++t) {
      if (gt[t] == gt[t - 1]) continue;
      // Boundary between frames t-1 and t.
      for (int k = std::max(0, t - collar); k < std::min(T, t + collar); ++k) excluded[k] = true;
    }
  }
  DerBreakdown out;
  for (int t = 0; t < T; ++t) {
    if (excluded[t]) continue;
    const long g = static_cast<long>(gt[t].size());
    const long e = static_cast<long>(est[t].size());
    long both = 0;
    for (int id : gt[t]) both += est[t].count(id);
    out.miss += std::max(0L, g - e);
    out.false_alarm += std::max(0L, e - g);
    out.confusion += std::min(g, e) - both;
    out.scored_speech += g;
    ++out.scored_frames;
  }
  if (out.scored_speech == 0) {
    throw UndefinedScoreError("DER is undefined without scored ground-truth speech");
  }
  out.der = 100.0 * static_cast<double>(out.miss + out.false_alarm + out.confusion) /
            static_cast<double>(out.scored_speech);
  return out;
}

}  // namespace vavit::metrics
