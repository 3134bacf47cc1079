// vavit/metrics/assignment.hpp

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

#include <vector>

#include <Eigen/Dense>

namespace vavit::metrics {

/// Minimum-cost assignment on a rectangular cost matrix (Hungarian method,
/// O(n^3)). Entries equal to +infinity are forbidden. Returns, for each row,
/// the assigned column or -1. Deterministic: ties resolve to the lowest
/// column index.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace vavit::metrics
