// src/framestream.cpp

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

#include "gve/framestream.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gve {
namespace {

constexpr char kMagic[4] = {'G', 'V', 'F', '1'};
constexpr std::streamoff kFrameCountOffset = 10;

void put_u16(std::ostream& out, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void put_f32(std::ostream& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

// Reads exactly n bytes or throws kTruncatedStream.
void read_exact(std::istream& in, void* dst, std::size_t n, const char* what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw Error(ErrorCode::kTruncatedStream, std::string("short read in ") + what);
}

uint16_t get_u16(std::istream& in, const char* what) {
  uint8_t b[2];
  read_exact(in, b, 2, what);
  return static_cast<uint16_t>(b[0] | b[1] << 8);
}

uint32_t get_u32(std::istream& in, const char* what) {
  uint8_t b[4];
  read_exact(in, b, 4, what);
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

float get_f32(std::istream& in, const char* what) {
  uint32_t bits = get_u32(in, what);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

void write_frame_body(std::ostream& out, const FrameRecord& frame) {
  out.put(static_cast<char>(serialize_toc(frame.toc)));
  const FrameCategory cat = frame.category();
  put_u16(out, static_cast<uint16_t>(payload_size(cat)));
  switch (cat) {
    case FrameCategory::kSpeech: {
      const auto* body = std::get_if<SpeechPayload>(&frame.payload);
      if (body == nullptr)
        throw Error(ErrorCode::kInvalidArgument, "speech frame without payload");
      put_u16(out, body->pitch_lag);
      for (float c : body->lpc) put_f32(out, c);
      for (int16_t s : body->pcm) put_u16(out, static_cast<uint16_t>(s));
      break;
    }
    case FrameCategory::kSid: {
      const auto* body = std::get_if<SidPayload>(&frame.payload);
      if (body == nullptr)
        throw Error(ErrorCode::kInvalidArgument, "SID frame without payload");
      for (int8_t e : body->band_energies_db) {
        if (e > 0 || e < -127)
          throw Error(ErrorCode::kInvalidArgument, "SID energy outside [-127, 0]");
        out.put(static_cast<char>(e));
      }
      break;
    }
    case FrameCategory::kNoData:
    case FrameCategory::kSpeechLost:
      if (!std::holds_alternative<std::monostate>(frame.payload))
        throw Error(ErrorCode::kInvalidArgument, "unexpected payload on empty frame");
      break;
  }
}

FrameRecord read_frame_body(std::istream& in) {
  uint8_t toc_byte;
  read_exact(in, &toc_byte, 1, "frame ToC");
  FrameRecord frame;
  frame.toc = parse_toc(toc_byte);
  const FrameCategory cat = frame.category();

  uint16_t stated = get_u16(in, "payload length");
  if (stated != payload_size(cat))
    throw Error(ErrorCode::kPayloadMismatch,
                "payload length " + std::to_string(stated) + " for " +
                    to_string(cat) + " frame");

  switch (cat) {
    case FrameCategory::kSpeech: {
      SpeechPayload body;
      body.pitch_lag = get_u16(in, "pitch lag");
      for (float& c : body.lpc) c = get_f32(in, "LPC");
      for (int16_t& s : body.pcm)
        s = static_cast<int16_t>(get_u16(in, "PCM"));
      frame.payload = body;
      break;
    }
    case FrameCategory::kSid: {
      SidPayload body;
      for (int8_t& e : body.band_energies_db) {
        uint8_t raw;
        read_exact(in, &raw, 1, "SID energy");
        int8_t v = static_cast<int8_t>(raw);
        if (v > 0 || v < -127)
          throw Error(ErrorCode::kPayloadMismatch,
                      "SID energy " + std::to_string(v) + " outside [-127, 0]");
        e = v;
      }
      frame.payload = body;
      break;
    }
    case FrameCategory::kNoData:
    case FrameCategory::kSpeechLost:
      break;
  }
  return frame;
}

}  // namespace

const char* to_string(FrameCategory category) {
  switch (category) {
    case FrameCategory::kSpeech: return "SPEECH";
    case FrameCategory::kSid: return "SID";
    case FrameCategory::kNoData: return "NO_DATA";
    case FrameCategory::kSpeechLost: return "SPEECH_LOST";
  }
  return "?";
}

const char* to_string(CodingMode mode) {
  return mode == CodingMode::kMusic ? "MUSIC" : "VOICE";
}

Toc parse_toc(uint8_t byte) {
  if (byte & 0xc0)
    throw Error(ErrorCode::kReservedBitSet,
                "ToC byte " + std::to_string(byte) + " has reserved bits set");
  uint8_t rate = byte & 0x0f;
  if (rate == 15)
    throw Error(ErrorCode::kInvalidRateCode, "rate code 15 is not assigned");
  Toc toc;
  toc.coding_mode = (byte & 0x20) ? CodingMode::kMusic : CodingMode::kVoice;
  toc.quality_bit = (byte & 0x10) != 0;
  toc.rate_code = rate;
  return toc;
}

uint8_t serialize_toc(const Toc& toc) {
  if (toc.rate_code >= 15)
    throw Error(ErrorCode::kInvalidArgument,
                "rate code " + std::to_string(toc.rate_code) + " out of range");
  uint8_t byte = toc.rate_code;
  if (toc.quality_bit) byte |= 0x10;
  if (toc.coding_mode == CodingMode::kMusic) byte |= 0x20;
  return byte;
}

std::size_t payload_size(FrameCategory category) {
  switch (category) {
    case FrameCategory::kSpeech:
      return 2 + kLpcOrder * 4 + kFrameLen * 2;  // 706
    case FrameCategory::kSid:
      return kNumSidBands;  // 20
    case FrameCategory::kNoData:
    case FrameCategory::kSpeechLost:
      return 0;
  }
  return 0;
}

StreamWriter::StreamWriter(std::ostream& sink) : sink_(sink) {
  sink_.write(kMagic, 4);
  put_u32(sink_, kSampleRate);
  put_u16(sink_, kFrameLen);
  put_u32(sink_, 0);  // frame_count, patched in finish()
  if (!sink_) throw Error(ErrorCode::kIo, "cannot write stream header");
}

StreamWriter::~StreamWriter() {
  if (!finished_) {
    try {
      finish();
    } catch (...) {
      // Destructors must not throw; an unfinished header is detectable by
      // readers as a frame count mismatch.
    }
  }
}

void StreamWriter::write(const FrameRecord& frame) {
  if (finished_)
    throw Error(ErrorCode::kInvalidArgument, "write after finish()");
  write_frame_body(sink_, frame);
  if (!sink_) throw Error(ErrorCode::kIo, "cannot write frame");
  ++count_;
}

void StreamWriter::finish() {
  if (finished_) return;
  finished_ = true;
  std::streamoff end = sink_.tellp();
  if (end < 0) throw Error(ErrorCode::kIo, "stream sink is not seekable");
  sink_.seekp(kFrameCountOffset);
  put_u32(sink_, count_);
  sink_.seekp(end);
  sink_.flush();
  if (!sink_) throw Error(ErrorCode::kIo, "cannot patch frame count");
}

StreamReader::StreamReader(std::istream& source) : source_(source) {
  char magic[4];
  read_exact(source_, magic, 4, "header");
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw Error(ErrorCode::kBadMagic, "not a GVF1 stream");
  header_.sample_rate = get_u32(source_, "header");
  header_.frame_len = get_u16(source_, "header");
  header_.frame_count = get_u32(source_, "header");
  if (header_.sample_rate != static_cast<uint32_t>(kSampleRate))
    throw Error(ErrorCode::kFormat,
                "unsupported sample rate " + std::to_string(header_.sample_rate));
  if (header_.frame_len != static_cast<uint16_t>(kFrameLen))
    throw Error(ErrorCode::kFormat,
                "unsupported frame length " + std::to_string(header_.frame_len));
}

bool StreamReader::next(FrameRecord* out) {
  if (read_ >= header_.frame_count) return false;
  *out = read_frame_body(source_);
  ++read_;
  return true;
}

void write_stream(std::ostream& sink, const std::vector<FrameRecord>& frames) {
  StreamWriter writer(sink);
  for (const FrameRecord& f : frames) writer.write(f);
  writer.finish();
}

std::pair<StreamHeader, std::vector<FrameRecord>> read_stream(std::istream& source) {
  StreamReader reader(source);
  std::vector<FrameRecord> frames;
  frames.reserve(reader.header().frame_count);
  FrameRecord frame;
  while (reader.next(&frame)) frames.push_back(frame);
  if (source.peek() != std::char_traits<char>::eof())
    throw Error(ErrorCode::kFormat, "trailing bytes after last frame");
  return {reader.header(), std::move(frames)};
}

void write_stream_file(const std::string& path, const std::vector<FrameRecord>& frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_stream(out, frames);
}

std::pair<StreamHeader, std::vector<FrameRecord>> read_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_stream(in);
}

}  // namespace gve
