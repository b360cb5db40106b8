// gve/encoder.hpp

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

#ifndef GVE_ENCODER_HPP_
#define GVE_ENCODER_HPP_

#include <deque>
#include <vector>

#include "gve/framestream.hpp"
#include "gve/spectral.hpp"
#include "gve/types.hpp"

// Uplink side of the pipeline: frame-level voice activity decisions, a
// spectral-flux speech/music classifier, and DTX frame emission. Active
// frames carry the PCM verbatim plus pitch and LPC descriptors; inactive
// frames thin out to SID envelopes and NO_DATA.

namespace gve {

struct AnalyzerConfig {
  // A frame is active when its energy clears the tracked noise floor by
  // vad_margin_db and an absolute gate; activity stretches over
  // vad_hangover_frames after the last raw-active frame.
  double vad_margin_db = 6.0;
  double vad_gate_dbfs = -60.0;
  int vad_hangover_frames = 5;
  int vad_history_frames = 100;

  // Classifier: low mean spectral flux over a sliding hop window reads as
  // music; the decision flips only after a run of contrary evidence.
  double flux_music_threshold = 0.10;
  int classifier_window_hops = 50;
  int classifier_hysteresis_hops = 25;

  // DTX cadence: a SID opens every inactive run and repeats every
  // sid_interval_frames; the inactive spectrum estimate keeps
  // sid_smoothing_alpha of its previous value per inactive frame.
  int sid_interval_frames = 8;
  double sid_smoothing_alpha = 0.9;
  bool dtx = true;
};

struct VadState {
  std::deque<double> energy_history_db;  // most recent last
  int hangover_remaining = 0;

  // Minimum of the history window; -120 dBFS before any frame was seen.
  double noise_floor_db() const {
    double floor = 0.0;
    bool first = true;
    for (double e : energy_history_db) {
      if (first || e < floor) floor = e;
      first = false;
    }
    return first ? -120.0 : floor;
  }
};

// One frame in, one decision out. The current frame's energy enters the
// history after the floor is evaluated, so the floor describes the past.
// Raising input amplitude never flips an active decision to inactive for a
// fixed state.
bool vad_decide(const double* frame, VadState& state, const AnalyzerConfig& cfg);

struct ClassifierState {
  CodingMode mode = CodingMode::kVoice;
  std::deque<double> flux_history;  // up to classifier_window_hops entries
  std::array<double, kNumBins> prev_magnitude{};
  bool have_prev = false;
  int contrary_hops = 0;
};

// Consumes one analysis hop and returns the (possibly flipped) mode.
// Evidence needs hop energy above the VAD gate; silent hops are neutral and
// reset the hysteresis run.
CodingMode classify_mode(const SpectralFrame& hop, ClassifierState& state,
                         const AnalyzerConfig& cfg);

// Encodes 16 kHz mono PCM into a frame sequence. Input is zero-padded to a
// whole number of frames. With dtx off every frame is SPEECH and
// encode -> decode is a bit-exact passthrough of the padded input.
std::vector<FrameRecord> encode(const Pcm& pcm, const AnalyzerConfig& cfg = {});

}  // namespace gve

#endif  // GVE_ENCODER_HPP_
