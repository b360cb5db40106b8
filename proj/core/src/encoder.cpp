// core/src/encoder.cpp

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

#include "gve/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "gve/lpc.hpp"

namespace gve {

bool vad_decide(const double* frame, VadState& state, const AnalyzerConfig& cfg) {
  const double energy_db = power_to_db(mean_square(frame, kFrameLen));
  const double floor_db = state.noise_floor_db();
  const bool raw_active =
      energy_db > floor_db + cfg.vad_margin_db && energy_db > cfg.vad_gate_dbfs;

  // Every frame feeds the floor tracker, active or not; long speech stretches
  // raise the floor and eventually gate themselves, which matches the
  // hangover-heavy behaviour this stage is meant to reproduce.
  state.energy_history_db.push_back(energy_db);
  while (static_cast<int>(state.energy_history_db.size()) > cfg.vad_history_frames)
    state.energy_history_db.pop_front();

  if (raw_active) {
    state.hangover_remaining = cfg.vad_hangover_frames;
    return true;
  }
  if (state.hangover_remaining > 0) {
    --state.hangover_remaining;
    return true;
  }
  return false;
}

CodingMode classify_mode(const SpectralFrame& hop, ClassifierState& state,
                         const AnalyzerConfig& cfg) {
  std::array<double, kNumBins> magnitude;
  double mag_sum = 0.0;
  for (int k = 0; k < kNumBins; ++k) {
    magnitude[k] = std::abs(hop.bins[k]);
    mag_sum += magnitude[k];
  }

  // Positive spectral flux, normalised by the current magnitude mass. The
  // first hop has no reference and counts as maximally fluctuating.
  double flux = 1.0;
  if (state.have_prev) {
    double rise = 0.0;
    for (int k = 0; k < kNumBins; ++k)
      rise += std::max(0.0, magnitude[k] - state.prev_magnitude[k]);
    flux = mag_sum > 1e-12 ? rise / mag_sum : 0.0;
  }
  state.prev_magnitude = magnitude;
  state.have_prev = true;

  state.flux_history.push_back(flux);
  while (static_cast<int>(state.flux_history.size()) > cfg.classifier_window_hops)
    state.flux_history.pop_front();
  double mean_flux = 0.0;
  for (double f : state.flux_history) mean_flux += f;
  mean_flux /= static_cast<double>(state.flux_history.size());

  const double energy_db = power_to_db(spectral_mean_square(hop.power()));
  const bool audible = energy_db > cfg.vad_gate_dbfs;

  // Tonal-and-steady reads as music, fluctuating as voice; silence is
  // neutral and breaks any pending flip.
  int evidence = 0;  // +1 music, -1 voice, 0 none
  if (audible) evidence = mean_flux < cfg.flux_music_threshold ? +1 : -1;

  const int contrary = state.mode == CodingMode::kVoice ? +1 : -1;
  if (evidence == contrary) {
    if (++state.contrary_hops >= cfg.classifier_hysteresis_hops) {
      state.mode = state.mode == CodingMode::kVoice ? CodingMode::kMusic
                                                    : CodingMode::kVoice;
      state.contrary_hops = 0;
    }
  } else {
    state.contrary_hops = 0;
  }
  return state.mode;
}

namespace {

FrameRecord make_speech_frame(const double* frame, CodingMode mode) {
  SpeechPayload payload;
  payload.pitch_lag = static_cast<uint16_t>(estimate_pitch(frame));
  const std::array<double, kLpcOrder> lpc = analyze_lpc(frame);
  for (int i = 0; i < kLpcOrder; ++i)
    payload.lpc[i] = static_cast<float>(lpc[i]);
  for (int n = 0; n < kFrameLen; ++n)
    payload.pcm[n] = sample_to_i16(frame[n]);
  return FrameRecord::speech(mode, payload);
}

int8_t quantize_band_db(double db) {
  const double clamped = std::clamp(db, -127.0, 0.0);
  return static_cast<int8_t>(std::lround(clamped));
}

}  // namespace

std::vector<FrameRecord> encode(const Pcm& pcm, const AnalyzerConfig& cfg) {
  Pcm padded = pcm;
  const size_t frames = (padded.size() + kFrameLen - 1) / kFrameLen;
  padded.resize(frames * kFrameLen, 0.0);

  const std::vector<SpectralFrame> hops = analyze(padded);

  VadState vad;
  ClassifierState classifier;
  std::array<double, kNumBins> smoothed{};
  bool smoothed_valid = false;
  bool in_inactive_run = false;
  int frames_since_sid = 0;

  std::vector<FrameRecord> out;
  out.reserve(frames);
  for (size_t f = 0; f < frames; ++f) {
    const double* frame = padded.data() + f * kFrameLen;

    CodingMode mode = classifier.mode;
    for (int h = 0; h < kHopsPerFrame; ++h)
      mode = classify_mode(hops[f * kHopsPerFrame + h], classifier, cfg);

    const bool vad_active = vad_decide(frame, vad, cfg);
    const bool active = vad_active || !cfg.dtx;

    if (active) {
      in_inactive_run = false;
      out.push_back(make_speech_frame(frame, mode));
      continue;
    }

    // Inactive: keep a smoothed spectrum of the background and thin the
    // stream to SID + NO_DATA. The smoothing state survives across runs so a
    // run-opening SID already describes the long-term background.
    const std::array<double, kNumBins> power = hops[f * kHopsPerFrame].power();
    if (smoothed_valid) {
      for (int k = 0; k < kNumBins; ++k)
        smoothed[k] = cfg.sid_smoothing_alpha * smoothed[k] +
                      (1.0 - cfg.sid_smoothing_alpha) * power[k];
    } else {
      smoothed = power;
      smoothed_valid = true;
    }

    bool emit_sid = false;
    if (!in_inactive_run) {
      in_inactive_run = true;
      frames_since_sid = 0;
      emit_sid = true;
    } else if (++frames_since_sid == cfg.sid_interval_frames) {
      frames_since_sid = 0;
      emit_sid = true;
    }

    if (emit_sid) {
      const BandEnvelope env = band_energies(smoothed);
      SidPayload sid;
      for (int b = 0; b < kNumSidBands; ++b)
        sid.band_energies_db[b] = quantize_band_db(env.energies_db[b]);
      out.push_back(FrameRecord::sid(mode, sid));
    } else {
      out.push_back(FrameRecord::no_data(mode));
    }
  }
  return out;
}

}  // namespace gve
