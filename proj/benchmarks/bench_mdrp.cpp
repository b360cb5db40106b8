// benchmarks/bench_mdrp.cpp

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

#include <gve/mdrp.hpp>
#include <gve/signalgen.hpp>
#include <gve/spectral.hpp>
#include <gve/types.hpp>

namespace {

const gve::Pcm& material() {
  static const gve::Pcm x = [] {
    gve::GeneratedSignal s = gve::generate_speech_like(2.0, 11);
    gve::quantize_in_place(s.pcm);
    return s.pcm;
  }();
  return x;
}

void BM_Mdrp(benchmark::State& state) {
  const gve::Pcm& x = material();
  for (auto _ : state) {
    gve::MdrpProcessor mdrp;
    benchmark::DoNotOptimize(mdrp.run(x));
  }
  state.SetItemsProcessed(state.iterations() * gve::hop_count(x.size()));
}
BENCHMARK(BM_Mdrp)->Unit(benchmark::kMillisecond);

}  // namespace
