// benchmarks/bench_vavit.cpp

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

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "vavit/avmap/train.hpp"
#include "vavit/sim/io.hpp"
#include "vavit/tracker/tracker.hpp"
#include "vavit/tracker/vem.hpp"

namespace {

using namespace vavit;

sim::Bundle scenario(int persons, int frames) {
  sim::ScenarioConfig c;
  c.n_persons = persons;
  c.n_frames = frames;
  c.seed = 1;
  return sim::simulate(c);
}

// Audio E-step for N persons against every active sub-band of one frame.
void BM_EStepAudio(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const sim::Bundle b = scenario(n, 60);
  const tracker::PreparedAudioModel model(b.mapping);
  std::vector<tracker::PersonTrack> tracks;
  std::vector<Vec2> naive;
  for (const auto& p : b.gt.frames[30]) {
    tracker::PersonTrack tr;
    tr.id = p.id;
    tr.belief.mean = p.state;
    tr.belief.cov = 25.0 * Mat6::Identity();
    tracks.push_back(tr);
    naive.push_back(position_of(p.state));
  }
  std::vector<AudioObservation> audios;
  for (int t = 0; t < 60 && audios.size() < 16; ++t) {
    audios.insert(audios.end(), b.audios[t].begin(), b.audios[t].end());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker::e_step_audio(tracks, audios, model, naive));
  }
  state.counters["observations"] = static_cast<double>(audios.size());
}
BENCHMARK(BM_EStepAudio)->Arg(1)->Arg(3)->Arg(6);

// One full tracker frame: VEM iterations, diarization and birth scan.
void BM_TrackerStep(benchmark::State& state) {
  const sim::Bundle b = scenario(static_cast<int>(state.range(0)), 200);
  auto mapping = std::make_shared<avmap::AudioMappingModel>(b.mapping);
  auto trk = std::make_unique<tracker::Tracker>(tracker::TrackerConfig{}, mapping);
  std::size_t t = 0;
  for (auto _ : state) {
    if (t == b.visuals.size()) {
      state.PauseTiming();
      trk = std::make_unique<tracker::Tracker>(tracker::TrackerConfig{}, mapping);
      t = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(trk->step({b.visuals[t], b.audios[t]}));
    ++t;
  }
}
BENCHMARK(BM_TrackerStep)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_TrainMapping(benchmark::State& state) {
  sim::ScenarioConfig c;
  c.n_frames = 0;
  c.mapping.n_train_pairs = static_cast<int>(state.range(0));
  const sim::Bundle b = sim::simulate(c);
  avmap::TrainingOptions opt;
  opt.R = c.mapping.R;
  for (auto _ : state) {
    benchmark::DoNotOptimize(avmap::train_mapping(b.training_pairs, opt));
  }
}
BENCHMARK(BM_TrainMapping)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
