// gve/wav_io.hpp

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

#ifndef GVE_WAV_IO_HPP_
#define GVE_WAV_IO_HPP_

#include <string>

#include "gve/types.hpp"

namespace gve {

// Reads a canonical RIFF/WAVE file. Only 16-bit PCM, mono, 16 kHz is
// accepted; anything else raises Error(kFormat). Samples are scaled by
// 1/32768 so a full-scale int16 maps to just under 1.0.
Pcm read_wav(const std::string& path);

// Writes a canonical 44-byte-header WAV (16-bit PCM mono 16 kHz). Output is
// deterministic: same samples, same bytes.
void write_wav(const std::string& path, const Pcm& samples);

}  // namespace gve

#endif  // GVE_WAV_IO_HPP_
