// core/src/decoder.cpp

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

#include "gve/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace gve {

namespace {

// Each emitted sample accumulates kFftSize / kHopLen random-phase inverse
// frames on average, and each frame contributes windowEnergy / kFftSize of
// its shaped power per sample, so the output mean square is
// windowEnergy / kHopLen times the per-bin target. The gain below cancels
// that, keeping comfort noise calibrated to the envelope it was shaped from.
constexpr double kWindowEnergy = 0.375 * kFrameLen;  // sum w^2, periodic Hann
constexpr double kCngPowerGain = kHopLen / kWindowEnergy;

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

void CngGenerator::generate(const std::array<double, kNumBins>& psd, int hops,
                            Pcm* out) {
  SpectralFrame frame;
  for (int h = 0; h < hops; ++h) {
    for (int k = 0; k < kNumBins; ++k) {
      const double mag = std::sqrt(kCngPowerGain * std::max(0.0, psd[k]));
      if (k == 0 || k == kNumBins - 1) {
        // DC and Nyquist are real; a random sign keeps them zero-mean.
        frame.bins[k] = rng_.uniform() < 0.5 ? -mag : mag;
      } else {
        frame.bins[k] = std::polar(mag, rng_.uniform(0.0, kTwoPi));
      }
    }
    const std::array<double, kFftSize> chunk = inverse_frame(frame);
    for (int n = 0; n < kFftSize; ++n) tail_[n] += chunk[n];
    out->insert(out->end(), tail_.begin(), tail_.begin() + kHopLen);
    std::copy(tail_.begin() + kHopLen, tail_.end(), tail_.begin());
    std::fill(tail_.end() - kHopLen, tail_.end(), 0.0);
  }
}

std::pair<Pcm, std::vector<DecoderState>> decode(
    const std::vector<FrameRecord>& frames, const DecoderConfig& cfg) {
  Pcm pcm;
  pcm.reserve(frames.size() * kFrameLen);
  std::vector<DecoderState> states;
  states.reserve(frames.size());

  CngGenerator cng(cfg.cng_seed);
  BandEnvelope env;
  env.energies_db.fill(-120.0);
  bool have_env = false;
  uint16_t held_pitch = 0;
  std::array<float, kLpcOrder> held_lpc{};
  std::array<double, kFrameLen> prev_frame{};
  const double lost_gain = db_to_amplitude(cfg.lost_attenuation_db);

  for (const FrameRecord& rec : frames) {
    const FrameCategory category = rec.toc.category();
    const size_t base = pcm.size();

    switch (category) {
      case FrameCategory::kSpeech: {
        const SpeechPayload& body = std::get<SpeechPayload>(rec.payload);
        held_pitch = body.pitch_lag;
        held_lpc = body.lpc;
        for (int n = 0; n < kFrameLen; ++n)
          pcm.push_back(i16_to_sample(body.pcm[n]));
        cng.reset();
        break;
      }
      case FrameCategory::kSid: {
        const SidPayload& body = std::get<SidPayload>(rec.payload);
        if (have_env) {
          for (int b = 0; b < kNumSidBands; ++b)
            env.energies_db[b] =
                cfg.env_hold_alpha * env.energies_db[b] +
                (1.0 - cfg.env_hold_alpha) * body.band_energies_db[b];
        } else {
          for (int b = 0; b < kNumSidBands; ++b)
            env.energies_db[b] = body.band_energies_db[b];
          have_env = true;
        }
        cng.generate(expand_envelope(env), kHopsPerFrame, &pcm);
        break;
      }
      case FrameCategory::kNoData: {
        cng.generate(expand_envelope(env), kHopsPerFrame, &pcm);
        break;
      }
      case FrameCategory::kSpeechLost: {
        // Conceal with the previous output frame, attenuated.
        for (int n = 0; n < kFrameLen; ++n)
          pcm.push_back(prev_frame[n] * lost_gain);
        cng.reset();
        break;
      }
    }

    std::copy(pcm.begin() + base, pcm.end(), prev_frame.begin());

    DecoderState st;
    st.frame_type = category;
    st.coding_mode = rec.toc.coding_mode;
    st.vad_active = category == FrameCategory::kSpeech;
    st.pitch_lag = held_pitch;
    st.lpc = held_lpc;
    st.cng_envelope = env;
    states.push_back(st);
  }
  return {std::move(pcm), std::move(states)};
}

}  // namespace gve
