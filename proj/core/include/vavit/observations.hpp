// vavit/observations.hpp

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

#include "vavit/gaussian.hpp"

namespace vavit {

/// A detected bounding box: v = (center x, center y, width, height) with
/// measurement covariance Phi, and an appearance descriptor u on the simplex.
struct VisualObservation {
  Vec4 v = Vec4::Zero();
  Mat4 Phi = Mat4::Identity();
  Eigen::VectorXd u;
};

/// Feature vector g (length 2J, or 2 in DOA-point mode) of active sub-band k.
struct AudioObservation {
  int k = 0;
  Eigen::VectorXd g;
};

struct FrameObservations {
  std::vector<VisualObservation> visuals;
  std::vector<AudioObservation> audios;
};

}  // namespace vavit
