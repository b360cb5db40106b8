// tests/test_analyzer.cpp

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

#include <gve/encoder.hpp>
#include <gve/signalgen.hpp>
#include <gve/spectral.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"

using namespace gve;

namespace {

// Constant-amplitude frame with an exact frame energy in dBFS.
Pcm flat_frame(double level_dbfs) {
  return Pcm(kFrameLen, db_to_amplitude(level_dbfs));
}

std::vector<bool> vad_run(const std::vector<double>& levels_dbfs) {
  VadState state;
  AnalyzerConfig cfg;
  std::vector<bool> out;
  for (double level : levels_dbfs) {
    const Pcm frame = flat_frame(level);
    out.push_back(vad_decide(frame.data(), state, cfg));
  }
  return out;
}

// Fabricated analysis hops with controlled spectral flux.
SpectralFrame steady_hop(double mag) {
  SpectralFrame f;
  for (int k = 0; k < kNumBins; ++k) f.bins[k] = mag;
  return f;
}

SpectralFrame silent_hop() {
  SpectralFrame f;
  for (int k = 0; k < kNumBins; ++k) f.bins[k] = 0.0;
  return f;
}

SpectralFrame noisy_hop(Rng& rng, double mag) {
  SpectralFrame f;
  for (int k = 0; k < kNumBins; ++k) f.bins[k] = mag * (0.2 + rng.uniform());
  return f;
}

}  // namespace

TEST_SUITE("analyzer") {

TEST_CASE("vad: the first frame above the gate is active") {
  // With an empty history the floor is -120 dBFS, so anything above the
  // absolute gate clears it.
  const auto d = vad_run({-35.0});
  CHECK(d[0]);
}

TEST_CASE("vad: frames below the absolute gate never activate") {
  const auto d = vad_run({-70.0, -70.0, -61.0});
  CHECK(!d[0]);
  CHECK(!d[1]);
  CHECK(!d[2]);
}

TEST_CASE("vad: margin over the tracked floor decides, floor is the past") {
  // 10 quiet frames teach the floor; the 6 dB margin is exclusive.
  std::vector<double> levels(10, -40.0);
  levels.push_back(-34.5);  // above -40 + 6.0? no: -34.5 > -34.0 is false
  levels.push_back(-33.9);  // clears the margin
  auto d = vad_run(levels);
  // Frame 0 is active off the empty history; its hangover covers 5 more.
  for (int f = 6; f < 10; ++f) CHECK(!d[f]);
  CHECK(!d[10]);
  CHECK(d[11]);
}

TEST_CASE("vad: hangover stretches activity by exactly five frames") {
  std::vector<double> levels(20, -50.0);
  for (int i = 0; i < 10; ++i) levels.push_back(-20.0);
  for (int i = 0; i < 20; ++i) levels.push_back(-50.0);
  const auto d = vad_run(levels);
  for (int f = 20; f < 30; ++f) CHECK(d[f]);        // loud
  for (int f = 30; f < 35; ++f) CHECK(d[f]);        // hangover
  for (int f = 35; f < 50; ++f) CHECK(!d[f]);       // quiet again
}

TEST_CASE("vad: history window forgets after 100 frames") {
  // The floor rises once the old quiet frames age out, so a level that was
  // "speech" against the old floor reads as background afterwards.
  std::vector<double> levels(30, -50.0);
  for (int i = 0; i < 120; ++i) levels.push_back(-42.0);
  const auto d = vad_run(levels);
  CHECK(d[30]);    // -42 clears -50 + 6
  CHECK(d[100]);   // some -50 frames still inside the window
  CHECK(!d[140]);  // window now holds only -42 frames
}

TEST_CASE("vad: raising amplitude never deactivates") {
  VadState a, b;
  AnalyzerConfig cfg;
  Rng rng(21);
  for (int f = 0; f < 50; ++f) {
    const double level = -55.0 + 30.0 * rng.uniform();
    const Pcm quiet = flat_frame(level);
    const Pcm loud = flat_frame(level + 3.0);
    const bool da = vad_decide(quiet.data(), a, cfg);
    const bool db = vad_decide(loud.data(), b, cfg);
    if (da) CHECK(db);
  }
}

TEST_CASE("classifier: steady spectra read as music after the window fills") {
  ClassifierState state;
  AnalyzerConfig cfg;
  Rng rng(3);
  CodingMode mode = CodingMode::kVoice;
  int flip_hop = -1;
  for (int h = 0; h < 120; ++h) {
    mode = classify_mode(steady_hop(0.05), state, cfg);
    if (mode == CodingMode::kMusic && flip_hop < 0) flip_hop = h;
  }
  CHECK(mode == CodingMode::kMusic);
  // Needs a full flux window plus the hysteresis run, but not much more.
  CHECK(flip_hop >= cfg.classifier_hysteresis_hops);
  CHECK(flip_hop <= cfg.classifier_window_hops + cfg.classifier_hysteresis_hops + 5);
}

TEST_CASE("classifier: fluctuating spectra stay voice") {
  ClassifierState state;
  AnalyzerConfig cfg;
  Rng rng(4);
  CodingMode mode = CodingMode::kVoice;
  for (int h = 0; h < 200; ++h) mode = classify_mode(noisy_hop(rng, 0.05), state, cfg);
  CHECK(mode == CodingMode::kVoice);
}

TEST_CASE("classifier: silence is neutral and resets contrary evidence") {
  ClassifierState state;
  AnalyzerConfig cfg;
  Rng rng(5);
  CodingMode mode = CodingMode::kVoice;
  for (int h = 0; h < 120; ++h) mode = classify_mode(steady_hop(0.05), state, cfg);
  REQUIRE(mode == CodingMode::kMusic);
  // A contrary run shorter than the hysteresis, broken by silence, never
  // flips the decision.
  for (int round = 0; round < 4; ++round) {
    for (int h = 0; h < 20; ++h)
      mode = classify_mode(noisy_hop(rng, 0.05), state, cfg);
    for (int h = 0; h < 10; ++h) mode = classify_mode(silent_hop(), state, cfg);
    CHECK(mode == CodingMode::kMusic);
  }
  // An unbroken contrary run flips it.
  for (int h = 0; h < 100; ++h) mode = classify_mode(noisy_hop(rng, 0.05), state, cfg);
  CHECK(mode == CodingMode::kVoice);
}

TEST_CASE("classifier: evidence requires energy above the gate") {
  ClassifierState state;
  AnalyzerConfig cfg;
  CodingMode mode = CodingMode::kVoice;
  // Steady but far below the gate: no music evidence accumulates.
  for (int h = 0; h < 200; ++h) mode = classify_mode(steady_hop(1e-6), state, cfg);
  CHECK(mode == CodingMode::kVoice);
}

TEST_CASE("encode: dtx off emits speech for every frame") {
  const GeneratedSignal sig = generate_speech_like(2.0, 8);
  AnalyzerConfig cfg;
  cfg.dtx = false;
  const auto frames = encode(sig.pcm, cfg);
  CHECK(frames.size() == sig.labels.size());
  for (const auto& f : frames) CHECK(f.category() == FrameCategory::kSpeech);
}

TEST_CASE("encode: input is padded to whole frames") {
  const Pcm x = test::gaussian(kFrameLen * 3 + 57, 0.1, 2);
  const auto frames = encode(x);
  CHECK(frames.size() == 4);
}

TEST_CASE("encode: sid cadence is start-of-run plus every eighth frame") {
  Rng rng(0xcadece);
  for (int trial = 0; trial < 20; ++trial) {
    // Random activity pattern: loud and quiet stretches of random length.
    Pcm x;
    std::vector<bool> loud_frame;
    const int runs = 6;
    for (int r = 0; r < runs; ++r) {
      const bool loud = r % 2 == 0;
      const int len = 3 + static_cast<int>(rng.uniform() * 28);
      for (int f = 0; f < len; ++f) {
        const Pcm frame =
            test::gaussian(kFrameLen, loud ? 0.2 : 0.002, rng.uniform(0, 1e9));
        x.insert(x.end(), frame.begin(), frame.end());
        loud_frame.push_back(loud);
      }
    }
    const auto frames = encode(x);

    // Find maximal inactive runs in the encoder's own output and check the
    // cadence inside each.
    size_t f = 0;
    while (f < frames.size()) {
      if (frames[f].category() == FrameCategory::kSpeech) {
        ++f;
        continue;
      }
      const size_t start = f;
      while (f < frames.size() &&
             frames[f].category() != FrameCategory::kSpeech)
        ++f;
      for (size_t i = start; i < f; ++i) {
        const FrameCategory want = (i - start) % 8 == 0 ? FrameCategory::kSid
                                                        : FrameCategory::kNoData;
        CHECK(frames[i].category() == want);
      }
    }
  }
}

TEST_CASE("encode: hangover defers the first sid by five frames") {
  // 30 quiet frames teach the floor, 10 loud frames, then quiet: the five
  // hangover frames stay speech and the run opens with a sid right after.
  Pcm x;
  Rng rng(12);
  for (int f = 0; f < 70; ++f) {
    const bool loud = f >= 30 && f < 40;
    const Pcm frame = test::gaussian(kFrameLen, loud ? 0.2 : 0.002, 100 + f);
    x.insert(x.end(), frame.begin(), frame.end());
  }
  const auto frames = encode(x);
  for (int f = 40; f < 45; ++f)
    CHECK(frames[f].category() == FrameCategory::kSpeech);
  CHECK(frames[45].category() == FrameCategory::kSid);
  for (int f = 46; f < 53; ++f)
    CHECK(frames[f].category() == FrameCategory::kNoData);
  CHECK(frames[53].category() == FrameCategory::kSid);
}

TEST_CASE("encode: sid band energies describe the background") {
  // Steady white background at -30 dBFS: every band of a settled sid should
  // sit within a couple of dB of that level.
  Pcm x = test::gaussian(80 * kFrameLen, db_to_amplitude(-30.0), 31);
  const auto frames = encode(x);
  const SidPayload* last_sid = nullptr;
  for (const auto& f : frames)
    if (f.category() == FrameCategory::kSid)
      last_sid = &std::get<SidPayload>(f.payload);
  REQUIRE(last_sid != nullptr);
  for (int b = 0; b < kNumSidBands; ++b)
    CHECK(std::fabs(static_cast<double>(last_sid->band_energies_db[b]) -
                    (-30.0)) < 2.5);
}

TEST_CASE("encode: speech frames carry the quantized signal") {
  const Pcm x = test::gaussian(4 * kFrameLen, 0.2, 88);
  AnalyzerConfig cfg;
  cfg.dtx = false;
  const auto frames = encode(x, cfg);
  for (size_t f = 0; f < frames.size(); ++f) {
    const auto& body = std::get<SpeechPayload>(frames[f].payload);
    for (int n = 0; n < kFrameLen; ++n)
      CHECK(body.pcm[n] == sample_to_i16(x[f * kFrameLen + n]));
  }
}

}  // TEST_SUITE
