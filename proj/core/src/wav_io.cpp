// src/wav_io.cpp

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

#include "gve/wav_io.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace gve {
namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

void put_tag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

Pcm read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);

  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kFormat, path + " is not a RIFF/WAVE file");
  }

  // Chunk walk; only fmt and data matter. Tolerates extra chunks (LIST etc.)
  // but insists on fmt appearing before data.
  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* hdr = bytes.data() + pos;
    uint32_t chunk_size = read_u32(hdr + 4);
    size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (body + 16 > bytes.size())
        throw Error(ErrorCode::kFormat, path + ": truncated fmt chunk");
      format = read_u16(&bytes[body]);
      channels = read_u16(&bytes[body + 2]);
      rate = read_u32(&bytes[body + 4]);
      bits = read_u16(&bytes[body + 14]);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) throw Error(ErrorCode::kFormat, path + ": data before fmt");
      if (format != 1 || bits != 16)
        throw Error(ErrorCode::kFormat, path + ": expected 16-bit PCM");
      if (channels != 1)
        throw Error(ErrorCode::kFormat, path + ": expected mono audio");
      if (rate != static_cast<uint32_t>(kSampleRate))
        throw Error(ErrorCode::kFormat,
                    path + ": expected " + std::to_string(kSampleRate) + " Hz");
      if (body + chunk_size > bytes.size())
        throw Error(ErrorCode::kFormat, path + ": truncated data chunk");
      size_t n = chunk_size / 2;
      Pcm samples(n);
      for (size_t i = 0; i < n; ++i) {
        uint16_t raw = read_u16(&bytes[body + 2 * i]);
        samples[i] = i16_to_sample(static_cast<int16_t>(raw));
      }
      return samples;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
  throw Error(ErrorCode::kFormat, path + ": no data chunk");
}

void write_wav(const std::string& path, const Pcm& samples) {
  std::vector<uint8_t> out;
  out.reserve(44 + samples.size() * 2);
  uint32_t data_size = static_cast<uint32_t>(samples.size() * 2);

  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, kSampleRate);
  put_u32(out, kSampleRate * 2);  // byte rate
  put_u16(out, 2);                // block align
  put_u16(out, 16);               // bits per sample
  put_tag(out, "data");
  put_u32(out, data_size);
  for (double s : samples) put_u16(out, static_cast<uint16_t>(sample_to_i16(s)));

  std::ofstream of(path, std::ios::binary | std::ios::trunc);
  if (!of) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  of.write(reinterpret_cast<const char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  if (!of) throw Error(ErrorCode::kIo, "short write to " + path);
}

}  // namespace gve
