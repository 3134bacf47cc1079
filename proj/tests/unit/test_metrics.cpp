// tests/unit/test_metrics.cpp

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vavit/errors.hpp"
#include "vavit/metrics/assignment.hpp"
#include "vavit/metrics/clear_mot.hpp"
#include "vavit/metrics/der.hpp"
#include "vavit/metrics/ospa.hpp"
#include "vavit/metrics/report.hpp"

namespace vavit::metrics {
namespace {

TrackItem item(int id, double x, double y, bool speaking = false) {
  return {id, Vec4(x, y, 100, 200), speaking};
}

TEST(Assignment, MatchesBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    Eigen::MatrixXd c = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return std::abs(sample_standard_normal(rng)); });
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double s = 0;
      for (int i = 0; i < n; ++i) s += c(i, perm[i]);
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto a = solve_assignment(c);
    double got = 0;
    for (int i = 0; i < n; ++i) got += c(i, a[i]);
    EXPECT_NEAR(got, best, 1e-12);
  }
}

TEST(Assignment, ForbiddenAndRectangular) {
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd c(3, 2);
  c << 1, inf, inf, inf, 2, 0.5;
  const auto a = solve_assignment(c);
  EXPECT_EQ(a, (std::vector<int>{0, -1, 1}));
}

TEST(Mota, CountsExample) {
  EXPECT_DOUBLE_EQ(mota_from_counts(2, 3, 1, 100), 94.0);
  EXPECT_THROW(mota_from_counts(0, 0, 0, 0), UndefinedScoreError);
}

TEST(Mota, PerfectTracking) {
  TrackSet gt(50, {item(1, 100, 100), item(2, 600, 400)});
  const MotReport r = evaluate_mot(gt, gt, GatePolicy{});
  EXPECT_DOUBLE_EQ(r.mota, 100.0);
  EXPECT_DOUBLE_EQ(r.mt, 100.0);
  EXPECT_DOUBLE_EQ(r.ml, 0.0);
  EXPECT_EQ(r.gt, 100);
}

TEST(Mota, EightyFivePercentCoverageIsMostlyTracked) {
  TrackSet gt(100, {item(1, 100, 100)});
  TrackSet est(100);
  for (int t = 0; t < 85; ++t) est[t] = {item(7, 100, 100)};
  const MotReport r = evaluate_mot(gt, est, GatePolicy{});
  EXPECT_DOUBLE_EQ(r.mt, 100.0);
  EXPECT_EQ(r.fn, 15);
  EXPECT_DOUBLE_EQ(r.mota, 85.0);
}

TEST(Mota, SwappedIdsCountTwoSwitches) {
  TrackSet gt(20, {item(1, 100, 100), item(2, 900, 100)});
  TrackSet est(20);
  for (int t = 0; t < 20; ++t) {
    est[t] = t < 10 ? TrackFrame{item(5, 100, 100), item(6, 900, 100)}
                    : TrackFrame{item(6, 100, 100), item(5, 900, 100)};
  }
  const MotReport r = evaluate_mot(gt, est, GatePolicy{});
  EXPECT_EQ(r.ids, 2);
  EXPECT_EQ(r.fp, 0);
  EXPECT_EQ(r.fn, 0);
}

TEST(Mota, EmptyEstimatesAreMisses) {
  TrackSet gt(1, {item(1, 100, 100), item(2, 500, 100), item(3, 900, 100)});
  TrackSet est(1);
  const MotReport r = evaluate_mot(gt, est, GatePolicy{});
  EXPECT_EQ(r.fn, 3);
  EXPECT_DOUBLE_EQ(r.mota, 0.0);
}

TEST(Mota, CountsAreConsistent) {
  Rng rng(8);
  std::uniform_real_distribution<double> pos(0, 1000);
  TrackSet gt(60), est(60);
  for (int t = 0; t < 60; ++t) {
    for (int id = 1; id <= 4; ++id) {
      if (pos(rng) < 900) gt[t].push_back(item(id, 200 * id, 300));
      if (pos(rng) < 850) est[t].push_back(item(10 + (id + t / 20) % 4, 200 * id + pos(rng) / 50, 300));
    }
    if (pos(rng) < 300) est[t].push_back(item(99, pos(rng), pos(rng)));
  }
  const MotReport r = evaluate_mot(gt, est, GatePolicy{});
  long matches = 0, est_count = 0;
  for (std::size_t t = 0; t < r.frames.size(); ++t) {
    matches += static_cast<long>(r.frames[t].matches.size());
    est_count += static_cast<long>(est[t].size());
  }
  EXPECT_EQ(matches + r.fn, r.gt);
  EXPECT_EQ(matches + r.fp, est_count);
  EXPECT_DOUBLE_EQ(r.mota, mota_from_counts(r.fp, r.fn, r.ids, r.gt));
  EXPECT_GT(r.ids, 0);
}

TEST(Mota, PartialViewGatesBlindStripOnDistance) {
  GatePolicy p;
  p.partial_fov = true;
  p.visible_lo = 576;
  p.visible_hi = 1344;
  const TrackItem gt = item(1, 100, 500);
  TrackItem est = item(2, 180, 500);
  est.box(2) = 10;  // no overlap needed in the blind strip
  EXPECT_TRUE(std::isfinite(gate_cost(gt, est, p)));
  p.partial_fov = false;
  EXPECT_FALSE(std::isfinite(gate_cost(gt, est, p)));
}

TEST(Ospa, IdenticalSetsScoreZero) {
  TrackSet gt(10, {item(1, 100, 100), item(2, 400, 300)});
  EXPECT_DOUBLE_EQ(ospa_t(gt, gt, OspaParams{}).mean, 0.0);
}

TEST(Ospa, EmptyEstimatesScoreCutoff) {
  TrackSet gt(10, {item(1, 100, 100), item(2, 400, 300)});
  EXPECT_DOUBLE_EQ(ospa_t(gt, TrackSet(10), OspaParams{}).mean, 100.0);
  EXPECT_DOUBLE_EQ(ospa_frame({}, {}, OspaParams{}), 0.0);
}

TEST(Ospa, ConstantOffset) {
  TrackSet gt(10, {item(1, 100, 100), item(2, 400, 300)});
  TrackSet est(10, {item(8, 103, 100), item(9, 400, 303)});
  EXPECT_NEAR(ospa_t(gt, est, OspaParams{}).mean, 3.0, 1e-12);
}

TEST(Ospa, LabelMismatchPenalty) {
  const TrackFrame x = {item(1, 100, 100)};
  const TrackFrame y = {item(2, 100, 100)};
  EXPECT_DOUBLE_EQ(ospa_frame(x, y, OspaParams{}), 25.0);
}

TEST(Ospa, SymmetricAndBounded) {
  Rng rng(12);
  std::uniform_real_distribution<double> pos(0, 1000);
  std::uniform_int_distribution<int> count(0, 5), label(1, 4);
  const OspaParams p;
  for (int trial = 0; trial < 300; ++trial) {
    TrackFrame x, y;
    for (int i = count(rng); i > 0; --i) x.push_back(item(label(rng), pos(rng), pos(rng)));
    for (int i = count(rng); i > 0; --i) y.push_back(item(label(rng), pos(rng), pos(rng)));
    const double d = ospa_frame(x, y, p);
    EXPECT_NEAR(d, ospa_frame(y, x, p), 1e-9);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, p.c + 1e-12);
  }
}

TEST(Der, IdenticalIsZero) {
  SpeechActivity gt(100);
  for (int t = 10; t < 60; ++t) gt[t] = {1};
  for (int t = 40; t < 90; ++t) gt[t].insert(2);
  EXPECT_DOUBLE_EQ(der(gt, gt).der, 0.0);
}

TEST(Der, AllSilentIsHundred) {
  SpeechActivity gt(100);
  for (int t = 10; t < 60; ++t) gt[t] = {1};
  const DerBreakdown d = der(gt, SpeechActivity(100));
  EXPECT_DOUBLE_EQ(d.der, 100.0);
  EXPECT_EQ(d.miss, d.scored_speech);
}

TEST(Der, ConfusionOnly) {
  SpeechActivity gt(100, std::set<int>{1});
  SpeechActivity est = gt;
  for (int t = 0; t < 10; ++t) est[t] = {2};
  const DerBreakdown d = der(gt, est, 0);
  EXPECT_DOUBLE_EQ(d.der, 10.0);
  EXPECT_EQ(d.confusion, 10);
  EXPECT_EQ(d.miss + d.false_alarm, 0);
}

TEST(Der, CollarExcludesBoundaries) {
  SpeechActivity gt(100);
  for (int t = 20; t < 80; ++t) gt[t] = {1};
  SpeechActivity est(100);
  for (int t = 23; t < 77; ++t) est[t] = {1};
  EXPECT_DOUBLE_EQ(der(gt, est, 6).der, 0.0);
  EXPECT_GT(der(gt, est, 0).der, 0.0);
}

TEST(Der, InvariantToGroundTruthRelabeling) {
  Rng rng(3);
  std::uniform_int_distribution<int> who(0, 3);
  SpeechActivity gt(200), est(200), gt2(200), est2(200);
  const int relabel[] = {0, 7, 3, 9};  // gt id 1->7, 2->3, 3->9
  for (int t = 0; t < 200; ++t) {
    // Speakers hold the floor for 20-frame turns; estimates flip per frame.
    const int g = t % 20 == 0 ? who(rng) : (gt[t - 1].empty() ? 0 : *gt[t - 1].begin()), e = who(rng);
    if (g > 0) gt[t] = {g}, gt2[t] = {relabel[g]};
    if (e > 0) est[t] = {e}, est2[t] = {relabel[e]};
  }
  EXPECT_DOUBLE_EQ(der(gt, est).der, der(gt2, est2).der);
}

TEST(Der, NoSpeechIsUndefined) {
  EXPECT_THROW(der(SpeechActivity(10), SpeechActivity(10)), UndefinedScoreError);
}

TEST(Report, SelfEvaluationIsPerfect) {
  TrackSet gt(40, {item(1, 300, 300, true), item(2, 900, 300)});
  for (int t = 20; t < 40; ++t) gt[t][1].speaking = true;
  const EvaluationReport r = evaluate(gt, gt, MetricsConfig{});
  EXPECT_DOUBLE_EQ(r.mot.mota, 100.0);
  EXPECT_DOUBLE_EQ(r.ospa.mean, 0.0);
  ASSERT_TRUE(r.der.has_value());
  EXPECT_DOUBLE_EQ(r.der->der, 0.0);
  EXPECT_DOUBLE_EQ(r.position_rmse, 0.0);
  EXPECT_EQ(r.matched, 80);
  const Json j = report_to_json(r);
  EXPECT_DOUBLE_EQ(j["mot"]["mota"].get<double>(), 100.0);
}

TEST(Report, CsvHasOneRowPerFrame) {
  TrackSet gt(7, {item(1, 300, 300)});
  const std::string csv = report_csv(evaluate(gt, gt, MetricsConfig{}));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
  EXPECT_EQ(csv.rfind("t,ospa,fp,fn,ids", 0), 0u);
}

}  // namespace
}  // namespace vavit::metrics
