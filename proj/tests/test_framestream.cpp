// tests/test_framestream.cpp

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

#include <gve/framestream.hpp>
#include <gve/rng.hpp>

#include <doctest.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

using namespace gve;

namespace {

// Random frame covering all categories and payload extremes.
FrameRecord random_frame(Rng& rng) {
  const CodingMode mode =
      rng.uniform() < 0.5 ? CodingMode::kVoice : CodingMode::kMusic;
  const double pick = rng.uniform();
  if (pick < 0.4) {
    SpeechPayload body;
    body.pitch_lag = static_cast<uint16_t>(rng.uniform(0.0, 400.0));
    for (auto& c : body.lpc) c = static_cast<float>(rng.uniform(-4.0, 4.0));
    for (auto& s : body.pcm) {
      const double u = rng.uniform();
      if (u < 0.01)
        s = -32768;
      else if (u < 0.02)
        s = 32767;
      else
        s = static_cast<int16_t>(rng.uniform(-32768.0, 32767.0));
    }
    const uint8_t rate = static_cast<uint8_t>(rng.uniform(0.0, 11.999));
    return FrameRecord::speech(mode, body, rate, rng.uniform() < 0.5);
  }
  if (pick < 0.7) {
    SidPayload body;
    for (auto& b : body.band_energies_db)
      b = static_cast<int8_t>(rng.uniform(-127.0, 0.999));
    return FrameRecord::sid(mode, body);
  }
  if (pick < 0.9) return FrameRecord::no_data(mode);
  return FrameRecord::speech_lost(mode);
}

}  // namespace

TEST_SUITE("framestream") {

TEST_CASE("toc category mapping") {
  for (int rate = 0; rate <= 11; ++rate)
    CHECK(Toc{CodingMode::kVoice, false, static_cast<uint8_t>(rate)}.category() ==
          FrameCategory::kSpeech);
  CHECK(Toc{CodingMode::kVoice, false, 12}.category() == FrameCategory::kSid);
  CHECK(Toc{CodingMode::kMusic, true, 13}.category() == FrameCategory::kNoData);
  CHECK(Toc{CodingMode::kVoice, false, 14}.category() ==
        FrameCategory::kSpeechLost);
}

TEST_CASE("toc byte round-trip over all legal values") {
  for (int mode = 0; mode <= 1; ++mode) {
    for (int quality = 0; quality <= 1; ++quality) {
      for (int rate = 0; rate <= 14; ++rate) {
        const Toc toc{static_cast<CodingMode>(mode), quality != 0,
                      static_cast<uint8_t>(rate)};
        CHECK(parse_toc(serialize_toc(toc)) == toc);
      }
    }
  }
}

TEST_CASE("toc rejects reserved bits and invalid rate code") {
  CHECK_THROWS_WITH_AS(parse_toc(0x80), doctest::Contains("reserved"), Error);
  CHECK_THROWS_AS(parse_toc(0x40), Error);
  try {
    parse_toc(0x0f);  // rate code 15
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidRateCode);
  }
  CHECK_THROWS_AS(serialize_toc(Toc{CodingMode::kVoice, false, 15}), Error);
}

TEST_CASE("payload sizes match the wire format") {
  CHECK(payload_size(FrameCategory::kSpeech) == 2 + 16 * 4 + 320 * 2);
  CHECK(payload_size(FrameCategory::kSid) == 20);
  CHECK(payload_size(FrameCategory::kNoData) == 0);
  CHECK(payload_size(FrameCategory::kSpeechLost) == 0);
}

TEST_CASE("to_string names") {
  CHECK(std::string(to_string(FrameCategory::kSpeech)) == "SPEECH");
  CHECK(std::string(to_string(FrameCategory::kSid)) == "SID");
  CHECK(std::string(to_string(FrameCategory::kNoData)) == "NO_DATA");
  CHECK(std::string(to_string(FrameCategory::kSpeechLost)) == "SPEECH_LOST");
  CHECK(std::string(to_string(CodingMode::kVoice)) == "VOICE");
  CHECK(std::string(to_string(CodingMode::kMusic)) == "MUSIC");
}

TEST_CASE("stream round-trip is bit-exact over random frames") {
  Rng rng(0xf5a3e);
  // Several independent streams of varying length; 1200 frames total.
  int remaining = 1200;
  while (remaining > 0) {
    const int n = std::min(remaining, 1 + static_cast<int>(rng.uniform() * 99));
    remaining -= n;
    std::vector<FrameRecord> frames;
    frames.reserve(n);
    for (int i = 0; i < n; ++i) frames.push_back(random_frame(rng));

    std::stringstream buf;
    write_stream(buf, frames);
    auto [header, back] = read_stream(buf);
    CHECK(header.frame_count == frames.size());
    CHECK(header.sample_rate == kSampleRate);
    CHECK(header.frame_len == kFrameLen);
    REQUIRE(back.size() == frames.size());
    for (size_t i = 0; i < frames.size(); ++i) CHECK(back[i] == frames[i]);
  }
}

TEST_CASE("file round-trip matches in-memory round-trip") {
  test::TempDir dir;
  Rng rng(77);
  std::vector<FrameRecord> frames;
  for (int i = 0; i < 64; ++i) frames.push_back(random_frame(rng));
  const std::string path = dir.file("frames.gvf");
  write_stream_file(path, frames);
  auto [header, back] = read_stream_file(path);
  CHECK(header.frame_count == 64);
  CHECK(back == frames);
}

TEST_CASE("empty stream survives") {
  std::stringstream buf;
  write_stream(buf, {});
  auto [header, back] = read_stream(buf);
  CHECK(header.frame_count == 0);
  CHECK(back.empty());
}

TEST_CASE("writer patches the frame count on finish") {
  std::stringstream buf;
  {
    StreamWriter writer(buf);
    Rng rng(3);
    for (int i = 0; i < 5; ++i) writer.write(random_frame(rng));
    CHECK(writer.frames_written() == 5);
    writer.finish();
  }
  auto [header, back] = read_stream(buf);
  CHECK(header.frame_count == 5);
}

TEST_CASE("reader rejects a bad magic") {
  std::stringstream buf;
  write_stream(buf, {FrameRecord::no_data(CodingMode::kVoice)});
  std::string bytes = buf.str();
  bytes[0] = 'X';
  std::stringstream bad(bytes);
  try {
    read_stream(bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadMagic);
  }
}

TEST_CASE("reader rejects truncation at every boundary") {
  Rng rng(11);
  std::stringstream buf;
  write_stream(buf, {random_frame(rng), random_frame(rng)});
  const std::string bytes = buf.str();
  // Chop inside the header, inside a ToC, and inside a payload.
  for (size_t cut : {size_t(2), size_t(15), bytes.size() - 3}) {
    std::stringstream bad(bytes.substr(0, cut));
    CHECK_THROWS_AS(read_stream(bad), Error);
  }
}

TEST_CASE("reader rejects trailing bytes") {
  std::stringstream buf;
  write_stream(buf, {FrameRecord::no_data(CodingMode::kVoice)});
  std::string bytes = buf.str() + "zz";
  std::stringstream bad(bytes);
  try {
    read_stream(bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
}

TEST_CASE("missing file reports an io error") {
  try {
    read_stream_file("/nonexistent/path/frames.gvf");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("payload length mismatch is detected") {
  SidPayload sid;
  std::stringstream buf;
  write_stream(buf, {FrameRecord::sid(CodingMode::kVoice, sid)});
  std::string bytes = buf.str();
  // The u16 payload length sits right after the 14-byte header + 1 ToC byte.
  bytes[15] = 19;
  std::stringstream bad(bytes);
  try {
    read_stream(bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPayloadMismatch);
  }
}

}  // TEST_SUITE
