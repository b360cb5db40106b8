// tests/test_sidecar_wav.cpp

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

#include <gve/sidecar_io.hpp>
#include <gve/wav_io.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>

#include "test_util.hpp"

using namespace gve;

TEST_SUITE("sidecar") {

TEST_CASE("wav round-trips the quantized samples") {
  test::TempDir dir;
  const std::string path = dir.file("x.wav");
  Pcm x = test::gaussian(1234, 0.3, 1);
  x.push_back(1.5);    // clipped to int16 max
  x.push_back(-1.5);   // clipped to int16 min
  write_wav(path, x);

  const Pcm y = read_wav(path);
  Pcm expected = x;
  quantize_in_place(expected);
  CHECK(y == expected);

  // Deterministic bytes.
  write_wav(dir.file("y.wav"), x);
  CHECK(test::slurp(path) == test::slurp(dir.file("y.wav")));
}

TEST_CASE("wav reader rejects what it cannot represent") {
  test::TempDir dir;
  try {
    read_wav(dir.file("missing.wav"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }

  // Corrupt the declared format of a valid file: stereo is refused.
  const std::string path = dir.file("stereo.wav");
  write_wav(path, test::gaussian(100, 0.1, 2));
  std::string bytes = test::slurp(path);
  bytes[22] = 2;  // channel count field
  std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size());
  try {
    read_wav(path);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }

  // Not a RIFF file at all.
  const std::string junk = dir.file("junk.wav");
  std::ofstream(junk, std::ios::binary) << "this is not audio";
  try {
    read_wav(junk);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
}

TEST_CASE("labels csv round-trips") {
  test::TempDir dir;
  const std::string path = dir.file("labels.csv");
  const std::vector<SegmentClass> labels = {
      SegmentClass::kSpeechActive, SegmentClass::kNoiseOnly,
      SegmentClass::kMusic, SegmentClass::kNoiseOnly};
  write_labels_csv(path, labels);
  CHECK(read_labels_csv(path) == labels);

  const std::string text = test::slurp(path);
  CHECK(text == "frame,class\n0,speech\n1,noise\n2,music\n3,noise\n");
}

TEST_CASE("labels csv validates header and rows") {
  test::TempDir dir;
  const std::string path = dir.file("bad.csv");
  std::ofstream(path) << "frames,classes\n0,speech\n";
  try {
    read_labels_csv(path);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
  std::ofstream(path) << "frame,class\n0,shouting\n";
  CHECK_THROWS_AS(read_labels_csv(path), Error);
  std::ofstream(path) << "frame,class\n1,speech\n";
  CHECK_THROWS_AS(read_labels_csv(path), Error);
  CHECK_THROWS_AS(read_labels_csv(dir.file("missing.csv")), Error);
}

TEST_CASE("states csv round-trips the decoder sidecar") {
  test::TempDir dir;
  const std::string path = dir.file("states.csv");
  std::vector<DecoderState> states(3);
  states[0].frame_type = FrameCategory::kSpeech;
  states[0].coding_mode = CodingMode::kVoice;
  states[0].vad_active = true;
  states[0].pitch_lag = 123;
  states[1].frame_type = FrameCategory::kSid;
  states[1].coding_mode = CodingMode::kMusic;
  states[2].frame_type = FrameCategory::kSpeechLost;
  for (int b = 0; b < kNumSidBands; ++b) {
    states[1].cng_envelope.energies_db[b] = -30.0 - 0.25 * b;
    states[2].cng_envelope.energies_db[b] = -45.5;
  }
  for (int i = 0; i < kLpcOrder; ++i)
    states[0].lpc[i] = static_cast<float>(0.1 * i - 0.5);

  write_states_csv(path, states);
  const auto back = read_states_csv(path);
  REQUIRE(back.size() == states.size());
  for (size_t f = 0; f < states.size(); ++f) {
    CHECK(back[f].frame_type == states[f].frame_type);
    CHECK(back[f].coding_mode == states[f].coding_mode);
    CHECK(back[f].vad_active == states[f].vad_active);
    CHECK(back[f].pitch_lag == states[f].pitch_lag);
    for (int b = 0; b < kNumSidBands; ++b)
      CHECK(std::fabs(back[f].cng_envelope.energies_db[b] -
                      states[f].cng_envelope.energies_db[b]) < 1e-5);
    for (int i = 0; i < kLpcOrder; ++i)
      CHECK(std::fabs(back[f].lpc[i] - states[f].lpc[i]) < 1e-5);
  }
}

TEST_CASE("states csv validates its header") {
  test::TempDir dir;
  const std::string path = dir.file("states.csv");
  std::ofstream(path) << "frame,frame_type\n";
  try {
    read_states_csv(path);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
}

TEST_CASE("trace and report writers emit their fixed headers") {
  test::TempDir dir;

  std::vector<NrTraceRow> nr(1);
  nr[0].hop = 0;
  nr[0].residual_db = -50.0;
  write_nr_trace_csv(dir.file("nr.csv"), nr);
  CHECK(test::slurp(dir.file("nr.csv")).rfind(
            "hop,time_s,provenance,policy,mean_gain_db,mean_noise_db,"
            "residual_db,detected_inactive\n", 0) == 0);

  std::vector<MdrpTraceRow> md(1);
  write_mdrp_trace_csv(dir.file("mdrp.csv"), md);
  CHECK(test::slurp(dir.file("mdrp.csv")).rfind(
            "hop,band,level_db,target_gain_db,applied_gain_db,curve,"
            "detected_inactive\n", 0) == 0);

  write_residual_csv(dir.file("res.csv"), {-20.0, -30.0});
  const std::string res = test::slurp(dir.file("res.csv"));
  CHECK(res.rfind("hop,time_s,level_db\n", 0) == 0);
  CHECK(res.find("\n0,0.000000,-20.000000\n") != std::string::npos);
  CHECK(res.find("\n1,0.010000,-30.000000\n") != std::string::npos);

  ComparisonReport report;
  report.snr_db = 10.0;
  ConditionResult c;
  c.noise_type = "white";
  c.suppression_unguided_db = 3.0;
  c.suppression_guided_db = 7.5;
  c.improvement_db = 4.5;
  c.detection_rate_unguided = 0.25;
  c.detection_rate_guided = 1.0;
  c.music_lsd_unguided_db = std::nan("");
  c.music_lsd_guided_db = std::nan("");
  report.conditions.push_back(c);
  write_report_csv(dir.file("report.csv"), report);
  const std::string rep = test::slurp(dir.file("report.csv"));
  CHECK(rep ==
        "noise_type,snr_db,suppression_unguided_db,suppression_guided_db,"
        "improvement_db,detection_rate_unguided,detection_rate_guided,"
        "music_lsd_unguided_db,music_lsd_guided_db\n"
        "white,10.000000,3.000000,7.500000,4.500000,0.250000,1.000000,,\n");
}

TEST_CASE("writers surface io failures") {
  CHECK_THROWS_AS(write_labels_csv("/nonexistent-dir/x.csv",
                                   {SegmentClass::kNoiseOnly}),
                  Error);
  CHECK_THROWS_AS(write_wav("/nonexistent-dir/x.wav", Pcm(10, 0.0)), Error);
}

}  // TEST_SUITE
