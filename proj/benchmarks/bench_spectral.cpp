// benchmarks/bench_spectral.cpp

// Copyright 2026 The GVE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <gve/signalgen.hpp>
#include <gve/spectral.hpp>

namespace {

const gve::Pcm& one_second() {
  static const gve::Pcm x = gve::generate_noise("pink", gve::kSampleRate, 7);
  return x;
}

void BM_Analyze(benchmark::State& state) {
  const gve::Pcm& x = one_second();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gve::analyze(x));
  }
  state.SetItemsProcessed(state.iterations() * gve::hop_count(x.size()));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const auto frames = gve::analyze(one_second());
  for (auto _ : state) {
    benchmark::DoNotOptimize(gve::synthesize(frames));
  }
  state.SetItemsProcessed(state.iterations() * frames.size());
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

void BM_BandEnergies(benchmark::State& state) {
  const auto frames = gve::analyze(one_second());
  const auto power = frames.front().power();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gve::band_energies(power));
  }
}
BENCHMARK(BM_BandEnergies);

}  // namespace

BENCHMARK_MAIN();
