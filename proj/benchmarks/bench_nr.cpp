// benchmarks/bench_nr.cpp

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

#include <utility>
#include <vector>

#include <gve/decoder.hpp>
#include <gve/encoder.hpp>
#include <gve/guidance.hpp>
#include <gve/noise_reduction.hpp>
#include <gve/signalgen.hpp>
#include <gve/types.hpp>

namespace {

struct NrMaterial {
  gve::Pcm decoded;
  std::vector<gve::EnhancementDirective> directives;
};

const NrMaterial& material() {
  static const NrMaterial m = [] {
    gve::GeneratedSignal s = gve::generate_speech_like(2.0, 11);
    gve::Pcm noise = gve::generate_noise("white", s.pcm.size(), 3);
    for (size_t n = 0; n < s.pcm.size(); ++n) s.pcm[n] += 0.3 * noise[n];
    gve::quantize_in_place(s.pcm);
    auto [decoded, states] = gve::decode(gve::encode(s.pcm));
    gve::quantize_in_place(decoded);
    return NrMaterial{std::move(decoded), gve::plan_directives(states)};
  }();
  return m;
}

void BM_NrUnguided(benchmark::State& state) {
  const gve::Pcm& x = material().decoded;
  for (auto _ : state) {
    gve::NrProcessor nr;
    benchmark::DoNotOptimize(nr.run(x));
  }
  state.SetItemsProcessed(state.iterations() * gve::hop_count(x.size()));
}
BENCHMARK(BM_NrUnguided)->Unit(benchmark::kMillisecond);

void BM_NrGuided(benchmark::State& state) {
  const NrMaterial& m = material();
  for (auto _ : state) {
    gve::NrProcessor nr;
    benchmark::DoNotOptimize(nr.run(m.decoded, m.directives));
  }
  state.SetItemsProcessed(state.iterations() * gve::hop_count(m.decoded.size()));
}
BENCHMARK(BM_NrGuided)->Unit(benchmark::kMillisecond);

}  // namespace
