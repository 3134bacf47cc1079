// vavit/random.hpp

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
#include <random>

#include <Eigen/Dense>

namespace vavit {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent substreams.
std::uint64_t mix_seed(std::uint64_t x);
/// Deterministic substream seed for (seed, a, b), e.g. (seed, frame, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

double sample_standard_normal(Rng& rng);
/// Draw from N(mean, cov). `cov` must be positive semidefinite; a zero
/// covariance returns the mean exactly.
Eigen::VectorXd sample_gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, Rng& rng);
/// Draw from Dirichlet(alpha). Components with alpha == 0 are zero.
Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& alpha, Rng& rng);
/// Uniform draw on the probability simplex of dimension d.
Eigen::VectorXd sample_uniform_simplex(int d, Rng& rng);

}  // namespace vavit
