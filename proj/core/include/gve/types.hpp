// gve/types.hpp

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

#ifndef GVE_TYPES_HPP_
#define GVE_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gve {

// The pipeline is fixed at 16 kHz mono, 20 ms frames, 10 ms hops. The FFT
// size leaves 192 zero-padded samples per analysis window; one-sided spectra
// therefore have kNumBins bins spaced 31.25 Hz apart.
constexpr int kSampleRate = 16000;
constexpr int kFrameLen = 320;
constexpr int kHopLen = 160;
constexpr int kHopsPerFrame = kFrameLen / kHopLen;
constexpr int kFftSize = 512;
constexpr int kNumBins = kFftSize / 2 + 1;
constexpr int kNumSidBands = 20;
constexpr int kLpcOrder = 16;

// Guard added inside log10 so that digital silence maps to -120 dB instead
// of -inf. Every dB conversion in the project goes through these helpers.
constexpr double kPowerEpsilon = 1e-12;

// PCM is carried as doubles in [-1, 1); the container quantizes to int16.
using Pcm = std::vector<double>;

inline double power_to_db(double power) {
  return 10.0 * std::log10(power + kPowerEpsilon);
}

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

inline double amplitude_to_db(double amp) {
  return 20.0 * std::log10(std::abs(amp) + 1e-12);
}

inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// Mean square of a sample range; the energy measure used by the VAD, the
// trace emitters and the metrics.
inline double mean_square(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc / static_cast<double>(n);
}

inline double mean_square(const Pcm& x) { return mean_square(x.data(), x.size()); }

// int16 <-> double conversion. Round-trips every int16 value exactly, which
// is what makes DTX-off encode/decode a bit-exact passthrough.
inline int16_t sample_to_i16(double x) {
  long v = std::lround(x * 32768.0);
  return static_cast<int16_t>(std::clamp(v, -32768L, 32767L));
}

inline double i16_to_sample(int16_t v) { return static_cast<double>(v) / 32768.0; }

inline void quantize_in_place(Pcm& x) {
  for (double& v : x) v = i16_to_sample(sample_to_i16(v));
}

// Ground-truth label for one 20 ms frame of generated material. "Noise
// only" covers silence in the clean signal (anything mixed on top is
// background), which is what the suppression metrics key on.
enum class SegmentClass { kNoiseOnly, kSpeechActive, kMusic };

inline const char* to_string(SegmentClass c) {
  switch (c) {
    case SegmentClass::kNoiseOnly: return "noise";
    case SegmentClass::kSpeechActive: return "speech";
    case SegmentClass::kMusic: return "music";
  }
  return "?";
}

enum class ErrorCode {
  kIo,
  kFormat,
  kBadMagic,
  kTruncatedStream,
  kReservedBitSet,
  kInvalidRateCode,
  kPayloadMismatch,
  kStateMisalignment,
  kInvalidArgument,
  kNoNoiseFrames,
  kNoMusicFrames,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedStream: return "TruncatedStream";
    case ErrorCode::kReservedBitSet: return "ReservedBitSet";
    case ErrorCode::kInvalidRateCode: return "InvalidRateCode";
    case ErrorCode::kPayloadMismatch: return "PayloadMismatch";
    case ErrorCode::kStateMisalignment: return "StateMisalignment";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNoNoiseFrames: return "NoNoiseFrames";
    case ErrorCode::kNoMusicFrames: return "NoMusicFrames";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gve

#endif  // GVE_TYPES_HPP_
