// tests/test_spectral.cpp

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

#include <gve/spectral.hpp>
#include <gve/types.hpp>

#include <doctest.h>

#include <cmath>
#include <thread>

#include "test_util.hpp"

using namespace gve;

TEST_SUITE("spectral") {

TEST_CASE("analysis window sums to one at the synthesis hop") {
  const auto& w = analysis_window();
  for (int n = 0; n < kHopLen; ++n)
    CHECK(w[n] + w[n + kHopLen] == doctest::Approx(1.0).epsilon(1e-12));
  double energy = 0.0;
  for (double v : w) energy += v * v;
  CHECK(energy == doctest::Approx(0.375 * kFrameLen).epsilon(1e-12));
}

TEST_CASE("analyze-synthesize reconstructs the interior to 1e-6") {
  const Pcm x = test::gaussian(kSampleRate, 0.3, 42);
  const auto frames = analyze(x);
  CHECK(frames.size() == x.size() / kHopLen);
  Pcm back = synthesize(frames);
  REQUIRE(back.size() >= x.size());
  // The first hop and the zero-padded tail lack full window overlap.
  for (size_t i = kFrameLen; i + kFrameLen < x.size(); ++i)
    CHECK(std::fabs(back[i] - x[i]) < 1e-6);
}

TEST_CASE("short and unaligned input are padded, not dropped") {
  const Pcm x = test::gaussian(kHopLen + 17, 0.1, 1);
  const auto frames = analyze(x);
  CHECK(static_cast<int>(frames.size()) == hop_count(x.size()));
  CHECK(hop_count(0) == 0);
  CHECK(hop_count(1) == 1);
  CHECK(hop_count(kHopLen) == 1);
  CHECK(hop_count(kHopLen + 1) == 2);
}

TEST_CASE("white noise periodogram reads the signal level in dBFS") {
  const double rms = 0.1;  // -20 dBFS
  const Pcm x = test::gaussian(8 * kSampleRate, rms, 7);
  const auto frames = analyze(x);
  std::array<double, kNumBins> avg{};
  size_t counted = 0;
  for (size_t h = 1; h + 1 < frames.size(); ++h) {
    const auto p = frames[h].power();
    for (int k = 0; k < kNumBins; ++k) avg[k] += p[k];
    ++counted;
  }
  for (auto& v : avg) v /= static_cast<double>(counted);
  CHECK(power_to_db(spectral_mean_square(avg)) ==
        doctest::Approx(power_to_db(rms * rms)).epsilon(0.02));
  const BandEnvelope env = band_energies(avg);
  for (int b = 0; b < kNumSidBands; ++b)
    CHECK(env.energies_db[b] ==
          doctest::Approx(power_to_db(rms * rms)).epsilon(0.03));
}

TEST_CASE("a pure tone concentrates in its band") {
  const double freq = 1000.0;
  const Pcm x = test::sine(freq, 1.0, 0.25);
  const auto frames = analyze(x);
  const auto p = frames[frames.size() / 2].power();
  const int bin = static_cast<int>(freq / kSampleRate * kFftSize + 0.5);
  double total = 0.0, near = 0.0;
  for (int k = 0; k < kNumBins; ++k) {
    total += p[k];
    if (std::abs(k - bin) <= 2) near += p[k];
  }
  CHECK(near / total > 0.99);
  CHECK(band_of_bin(bin) == band_of_bin(bin));  // self-consistent
}

TEST_CASE("band edges partition the spectrum") {
  CHECK(band_edge(0) == 0);
  CHECK(band_edge(kNumSidBands) == kNumBins);
  for (int b = 0; b < kNumSidBands; ++b) {
    CHECK(band_edge(b) < band_edge(b + 1));
    for (int k = band_edge(b); k < band_edge(b + 1); ++k)
      CHECK(band_of_bin(k) == b);
  }
}

TEST_CASE("band energies and expansion are inverse on flat spectra") {
  std::array<double, kNumBins> psd;
  psd.fill(db_to_power(-31.0));
  const BandEnvelope env = band_energies(psd);
  for (int b = 0; b < kNumSidBands; ++b)
    CHECK(env.energies_db[b] == doctest::Approx(-31.0).epsilon(1e-9));
  const auto back = expand_envelope(env);
  for (int k = 0; k < kNumBins; ++k)
    CHECK(back[k] == doctest::Approx(psd[k]).epsilon(1e-9));
}

TEST_CASE("spectral_mean_square matches the windowed time energy") {
  const Pcm x = test::gaussian(kFrameLen, 0.2, 9);
  const auto frames = analyze(x);
  const auto& w = analysis_window();
  double windowed = 0.0;
  for (int n = 0; n < kFrameLen; ++n) windowed += x[n] * w[n] * x[n] * w[n];
  // Parseval: sum over all FFT bins of |X|^2 equals kFftSize * windowed
  // energy; with the 1/sqrt(sum w^2) bin scaling that reduces to
  // spectral_mean_square = windowed / sum(w^2).
  CHECK(spectral_mean_square(frames[0].power()) ==
        doctest::Approx(windowed / (0.375 * kFrameLen)).epsilon(1e-9));
}

TEST_CASE("inverse_frame undoes analyze for a single frame") {
  Pcm x = test::gaussian(kFrameLen, 0.2, 12);
  const auto frames = analyze(x);
  const auto out = inverse_frame(frames[0]);
  const auto& w = analysis_window();
  for (int n = 0; n < kFrameLen; ++n)
    CHECK(std::fabs(out[n] - x[n] * w[n]) < 1e-9);
  for (int n = kFrameLen; n < kFftSize; ++n) CHECK(std::fabs(out[n]) < 1e-9);
}

TEST_CASE("concurrent analysis is safe once plans exist") {
  const Pcm x = test::gaussian(kSampleRate / 2, 0.1, 5);
  const auto expect = analyze(x);
  std::array<std::vector<SpectralFrame>, 4> results;
  std::array<std::thread, 4> threads;
  for (size_t t = 0; t < threads.size(); ++t)
    threads[t] = std::thread([&, t] { results[t] = analyze(x); });
  for (auto& th : threads) th.join();
  for (const auto& r : results) {
    REQUIRE(r.size() == expect.size());
    for (size_t h = 0; h < r.size(); ++h)
      for (int k = 0; k < kNumBins; ++k)
        CHECK(r[h].bins[k] == expect[h].bins[k]);
  }
}

}  // TEST_SUITE
