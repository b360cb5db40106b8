// gve/metrics.hpp

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

#ifndef GVE_METRICS_HPP_
#define GVE_METRICS_HPP_

#include <string>
#include <vector>

#include "gve/noise_reduction.hpp"
#include "gve/types.hpp"

// Objective measures over labeled material. Noise-run onsets are excluded
// from the noise measures: activity hangover deliberately lets a few frames
// of background through at full level, and counting them would measure the
// hangover, not the enhancer.

namespace gve {

// Energy-ratio suppression over noise-only frames, in dB (positive means
// the output is quieter). The first exclude_onset_frames of every noise-only
// run are skipped. input and output must be equally long; labels must cover
// every started frame.
double suppression_db(const Pcm& input, const Pcm& output,
                      const std::vector<SegmentClass>& labels,
                      int exclude_onset_frames = 5);

// Per-hop output level, dB: one value per started kHopLen block.
std::vector<double> residual_trace_db(const Pcm& x);

// Collapses a per-hop noise reduction trace to one detection flag per frame
// (the frame's first hop carries the decision made at the frame boundary).
std::vector<bool> detected_inactive_frames(const std::vector<NrTraceRow>& trace);

// Fraction of counted noise-only frames flagged inactive; onset exclusion as
// in suppression_db.
double silence_detection_rate(const std::vector<bool>& detected,
                              const std::vector<SegmentClass>& labels,
                              int exclude_onset_frames = 5);

// Mean over hops of the per-hop RMS log-spectral distance, dB. If hop_mask
// is given, only masked hops count. Signals must be equally long.
double log_spectral_distance_db(const Pcm& reference, const Pcm& test,
                                const std::vector<bool>* hop_mask = nullptr);

// Hop mask selecting hops of frames with a given label.
std::vector<bool> hops_with_label(const std::vector<SegmentClass>& labels,
                                  SegmentClass which);

// One row of a guided-versus-unguided comparison under one backdrop.
struct ConditionResult {
  std::string noise_type;
  double suppression_unguided_db = 0.0;
  double suppression_guided_db = 0.0;
  double improvement_db = 0.0;
  double detection_rate_unguided = 0.0;
  double detection_rate_guided = 0.0;
  // NaN when the material has no music frames.
  double music_lsd_unguided_db = 0.0;
  double music_lsd_guided_db = 0.0;
};

struct ComparisonReport {
  double snr_db = 0.0;
  uint64_t seed = 0;
  std::vector<ConditionResult> conditions;
};

}  // namespace gve

#endif  // GVE_METRICS_HPP_
