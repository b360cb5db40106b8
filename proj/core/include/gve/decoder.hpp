// gve/decoder.hpp

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

#ifndef GVE_DECODER_HPP_
#define GVE_DECODER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "gve/framestream.hpp"
#include "gve/rng.hpp"
#include "gve/spectral.hpp"
#include "gve/types.hpp"

// Downlink side: reconstructs PCM from a frame sequence and exposes, per
// frame, the internal state a downstream enhancer can exploit (frame type,
// activity, held pitch/LPC, comfort-noise envelope).

namespace gve {

struct DecoderConfig {
  // Per received SID, the held envelope keeps env_hold_alpha of itself and
  // blends in the rest from the wire (in the dB domain). The very first SID
  // is copied verbatim.
  double env_hold_alpha = 0.8;
  // Lost frames repeat the previous output with this attenuation.
  double lost_attenuation_db = -3.0;
  // Comfort-noise phase seed; fixed by default so decoding is reproducible.
  uint64_t cng_seed = 0x67766531u;
};

// Per-frame decoder state snapshot, taken after the frame was processed.
struct DecoderState {
  FrameCategory frame_type = FrameCategory::kNoData;
  CodingMode coding_mode = CodingMode::kVoice;
  bool vad_active = false;          // true exactly for SPEECH frames
  uint16_t pitch_lag = 0;           // held from the last SPEECH frame
  std::array<float, kLpcOrder> lpc{};
  BandEnvelope cng_envelope;        // dB, after any SID update this frame
};

// Spectral-domain comfort noise: random-phase bins shaped to a target power
// spectrum, overlap-added at the analysis hop so consecutive inactive frames
// join without seams. reset() drops the overlap tail (call when real audio
// interrupted the noise) but keeps the phase stream.
class CngGenerator {
 public:
  explicit CngGenerator(uint64_t seed) : rng_(seed) { tail_.fill(0.0); }

  // Appends hops * kHopLen samples of noise with per-bin power target psd.
  void generate(const std::array<double, kNumBins>& psd, int hops, Pcm* out);
  void reset() { tail_.fill(0.0); }

 private:
  Rng rng_;
  std::array<double, kFftSize> tail_;
};

// Decodes a frame sequence to PCM (kFrameLen samples per frame) plus one
// DecoderState per frame.
std::pair<Pcm, std::vector<DecoderState>> decode(
    const std::vector<FrameRecord>& frames, const DecoderConfig& cfg = {});

}  // namespace gve

#endif  // GVE_DECODER_HPP_
