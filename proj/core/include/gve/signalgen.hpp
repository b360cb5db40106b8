// gve/signalgen.hpp

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

#ifndef GVE_SIGNALGEN_HPP_
#define GVE_SIGNALGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gve/types.hpp"

// Deterministic test-signal generators. Clean material comes with
// frame-aligned ground-truth labels (pauses in the clean signal are exact
// zeros, so after mixing they are noise-only by construction). The noise
// bank covers stationary and modulated backgrounds.

namespace gve {

struct GeneratedSignal {
  Pcm pcm;
  std::vector<SegmentClass> labels;  // one per kFrameLen frame
};

// Speech-like: bursts of pulse-train "syllables" through formant-style
// resonators, interleaved with unvoiced noise syllables, at roughly
// syllable-rate spectral change. Bursts alternate with long and short
// pauses; all boundaries are frame-aligned. Burst RMS is -15 dBFS.
GeneratedSignal generate_speech_like(double seconds, uint64_t seed);

// Music-like: sustained chords of steady partials with slow shimmer, chord
// changes every few seconds. Spectrally static by design. RMS -14 dBFS.
GeneratedSignal generate_music_like(double seconds, uint64_t seed);

// Mixed programme: speech / gap / music / gap, repeating.
GeneratedSignal generate_mixed(double seconds, uint64_t seed);

// All zeros.
GeneratedSignal generate_silence(double seconds);

// Dispatch by kind name: "speech_like", "music_like", "mixed", "silence".
GeneratedSignal generate(const std::string& kind, double seconds, uint64_t seed);

// Background noise, length samples, overall RMS -20 dBFS before any mixing
// gain. Types: "white", "pink", "car_like", "train_like", "cafeteria_like",
// "wind_like". The last three are amplitude-modulated backgrounds; the
// modulation is kept shallow (about 3 dB of power swing) so the slow swell
// reads as background, not as activity.
Pcm generate_noise(const std::string& type, std::size_t samples, uint64_t seed);

const std::vector<std::string>& noise_types();

}  // namespace gve

#endif  // GVE_SIGNALGEN_HPP_
