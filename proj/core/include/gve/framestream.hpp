// gve/framestream.hpp

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

#ifndef GVE_FRAMESTREAM_HPP_
#define GVE_FRAMESTREAM_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "gve/types.hpp"

// .gvf container, version 1. All integers little-endian.
//
//   offset 0   "GVF1"
//   offset 4   u32 sample_rate      (16000 in v1)
//   offset 8   u16 frame_len        (320 in v1)
//   offset 10  u32 frame_count
//   offset 14  frames, back to back
//
// Each frame is a 1-byte table-of-contents entry, a u16 payload length and
// the payload:
//
//   ToC bits   [7] header_bit, reserved 0
//              [6] followed_bit, reserved 0
//              [5] coding_mode   (0 voice, 1 music)
//              [4] quality_bit   (stored, never acted on)
//              [3:0] rate_code   (0..11 speech, 12 SID, 13 no-data,
//                                 14 speech-lost, 15 invalid)
//
//   speech     u16 pitch_lag, 16 x f32 LPC, 320 x i16 PCM  (706 bytes)
//   SID        20 x i8 band log-energies, dB, clamped [-127, 0]  (20 bytes)
//   no-data / speech-lost: empty payload
//
// The payload length field is redundant with the rate code; a mismatch is a
// PayloadMismatch error so corrupt streams fail early rather than desync.

namespace gve {

enum class FrameCategory : uint8_t { kSpeech, kSid, kNoData, kSpeechLost };

enum class CodingMode : uint8_t { kVoice = 0, kMusic = 1 };

const char* to_string(FrameCategory category);
const char* to_string(CodingMode mode);

struct Toc {
  CodingMode coding_mode = CodingMode::kVoice;
  bool quality_bit = false;
  uint8_t rate_code = 0;

  FrameCategory category() const {
    if (rate_code <= 11) return FrameCategory::kSpeech;
    if (rate_code == 12) return FrameCategory::kSid;
    if (rate_code == 13) return FrameCategory::kNoData;
    return FrameCategory::kSpeechLost;
  }

  bool operator==(const Toc&) const = default;
};

// Byte <-> Toc. parse_toc rejects reserved bits (kReservedBitSet) and rate
// code 15 (kInvalidRateCode); serialize_toc rejects rate code 15 as an
// invalid argument. They are exact inverses on the remaining values.
Toc parse_toc(uint8_t byte);
uint8_t serialize_toc(const Toc& toc);

struct SpeechPayload {
  uint16_t pitch_lag = 0;  // samples, 0 = unvoiced / no pitch found
  std::array<float, kLpcOrder> lpc{};
  std::array<int16_t, kFrameLen> pcm{};

  bool operator==(const SpeechPayload&) const = default;
};

struct SidPayload {
  std::array<int8_t, kNumSidBands> band_energies_db{};

  bool operator==(const SidPayload&) const = default;
};

// Payload size on the wire for each category.
std::size_t payload_size(FrameCategory category);

struct FrameRecord {
  Toc toc;
  std::variant<std::monostate, SpeechPayload, SidPayload> payload;

  FrameCategory category() const { return toc.category(); }

  bool operator==(const FrameRecord&) const = default;

  static FrameRecord speech(CodingMode mode, SpeechPayload body,
                            uint8_t rate_code = 0, bool quality = true) {
    FrameRecord r;
    r.toc = Toc{mode, quality, rate_code};
    r.payload = std::move(body);
    return r;
  }

  static FrameRecord sid(CodingMode mode, SidPayload body) {
    FrameRecord r;
    r.toc = Toc{mode, false, 12};
    r.payload = std::move(body);
    return r;
  }

  static FrameRecord no_data(CodingMode mode) {
    FrameRecord r;
    r.toc = Toc{mode, false, 13};
    return r;
  }

  static FrameRecord speech_lost(CodingMode mode) {
    FrameRecord r;
    r.toc = Toc{mode, false, 14};
    return r;
  }
};

struct StreamHeader {
  uint32_t sample_rate = kSampleRate;
  uint16_t frame_len = kFrameLen;
  uint32_t frame_count = 0;

  bool operator==(const StreamHeader&) const = default;
};

// Streaming writer. The header is written up front with a zero frame count
// and patched in finish(), so the sink must be seekable (files and string
// streams are). finish() runs at most once; the destructor calls it if the
// caller did not.
class StreamWriter {
 public:
  explicit StreamWriter(std::ostream& sink);
  ~StreamWriter();

  StreamWriter(const StreamWriter&) = delete;
  StreamWriter& operator=(const StreamWriter&) = delete;

  void write(const FrameRecord& frame);
  void finish();

  uint32_t frames_written() const { return count_; }

 private:
  std::ostream& sink_;
  uint32_t count_ = 0;
  bool finished_ = false;
};

// Streaming reader; validates the header on construction and each frame as
// it is consumed. next() returns false once frame_count frames were read.
class StreamReader {
 public:
  explicit StreamReader(std::istream& source);

  const StreamHeader& header() const { return header_; }
  bool next(FrameRecord* out);
  uint32_t frames_read() const { return read_; }

 private:
  std::istream& source_;
  StreamHeader header_;
  uint32_t read_ = 0;
};

// Whole-stream conveniences. read_stream additionally rejects trailing bytes
// after the last frame.
void write_stream(std::ostream& sink, const std::vector<FrameRecord>& frames);
std::pair<StreamHeader, std::vector<FrameRecord>> read_stream(std::istream& source);

void write_stream_file(const std::string& path, const std::vector<FrameRecord>& frames);
std::pair<StreamHeader, std::vector<FrameRecord>> read_stream_file(const std::string& path);

}  // namespace gve

#endif  // GVE_FRAMESTREAM_HPP_
