// vavit/metrics/ospa.hpp

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

#include <map>
#include <vector>

#include "vavit/metrics/clear_mot.hpp"

namespace vavit::metrics {

struct OspaParams {
  double p = 1.0;
  double c = 100.0;            // cutoff, pixels
  double alpha_label = 25.0;   // label mismatch penalty, pixels
};

struct OspaResult {
  std::vector<double> per_frame;
  double mean = 0.0;
  /// Estimated id -> ground-truth id chosen by the global label alignment.
  std::map<int, int> labels;
};

/// OSPA distance between two labeled 2-D point sets (box centers):
///   ( (1/n) (min_pi sum d(x_i, y_pi(i))^p + c^p (n - m)) )^(1/p),
///   d(x, y) = min(c, |x - y| + alpha * [label(x) != label(y)]),
/// with n the larger cardinality. 0 when both sets are empty.
double ospa_frame(const TrackFrame& x, const TrackFrame& y, const OspaParams& params);

/// Globally aligns estimated labels with ground truth by an optimal
/// track-to-track assignment on the time-summed cutoff distance, then
/// scores every frame with ospa_frame.
OspaResult ospa_t(const TrackSet& gt, const TrackSet& est, const OspaParams& params);

}  // namespace vavit::metrics
