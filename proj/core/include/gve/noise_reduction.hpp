// gve/noise_reduction.hpp

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

#ifndef GVE_NOISE_REDUCTION_HPP_
#define GVE_NOISE_REDUCTION_HPP_

#include <deque>
#include <vector>

#include "gve/guidance.hpp"
#include "gve/spectral.hpp"
#include "gve/types.hpp"

// Spectral-subtraction noise reduction with a minimum-statistics noise
// tracker. Runs standalone (internal estimate only) or under guidance
// directives, where inactive frames substitute the decoder's comfort-noise
// spectrum for the tracked estimate.

namespace gve {

struct NrConfig {
  // First-order recursive smoothing of the periodogram (retained fraction).
  double alpha_smooth = 0.85;
  // The tracked minimum underestimates the mean noise power; the bias
  // compensates on average.
  double bias = 1.5;
  // Minimum statistics window: subwindow_count subwindows of subwindow_hops
  // hops each (one second of history total at the default layout).
  int subwindow_count = 10;
  int subwindow_hops = 10;

  // Gain rule parameters per policy: spectral over-subtraction factor and
  // gain floor.
  double beta_aggressive = 1.5;
  double beta_soft = 0.5;
  double floor_aggressive_db = -18.0;
  double floor_soft_db = -6.0;

  // Standalone inactivity detector feeding the trace (energy over a tracked
  // floor, same shape as the encoder's activity rule).
  double detector_margin_db = 6.0;
  double detector_gate_dbfs = -60.0;
  int detector_history_frames = 100;
};

// Gain rule inputs for one policy. Bypass pins the gain to exactly 1.
struct GainParams {
  double beta = 0.0;
  double floor_linear = 1.0;

  bool operator==(const GainParams&) const = default;
};

GainParams gain_params(NrPolicy policy, const NrConfig& cfg);

// Minimum statistics over the smoothed periodogram. Fresh trackers report a
// zero estimate until the initial subwindow ages out of the history
// (subwindow_count * subwindow_hops hops), which reproduces the cold-start
// convergence gap of an unguided enhancer.
class NoiseEstimator {
 public:
  explicit NoiseEstimator(const NrConfig& cfg = {});

  // Folds one hop's raw power spectrum into the smoothed periodogram and the
  // minimum tracker.
  void update(const std::array<double, kNumBins>& power);

  // Freeze-variant override: pins the smoothed periodogram and every tracked
  // minimum to the given spectrum instead of adapting.
  void seed(const std::array<double, kNumBins>& psd);

  const std::array<double, kNumBins>& smoothed() const { return smoothed_; }

  // Bias-compensated minimum over the window.
  std::array<double, kNumBins> estimate() const;

 private:
  NrConfig cfg_;
  std::array<double, kNumBins> smoothed_{};
  std::deque<std::array<double, kNumBins>> minima_;
  int hops_into_subwindow_ = 0;
};

// Spectral subtraction gain: per bin
//   g = max(sqrt(max(0, 1 - beta * noise / max(power, eps))), floor).
// Every gain lies in [floor, 1]; zero-power bins with zero noise pass
// through at gain 1.
std::array<double, kNumBins> compute_gain(
    const std::array<double, kNumBins>& power,
    const std::array<double, kNumBins>& noise, const GainParams& params);

struct NrTraceRow {
  int hop = 0;
  double time_s = 0.0;
  NoiseSource provenance = NoiseSource::kInternal;
  NrPolicy policy = NrPolicy::kAggressive;
  double mean_gain_db = 0.0;   // mean over bins of the dB gain
  double mean_noise_db = 0.0;  // dB of the mean noise power in use
  double residual_db = 0.0;    // output level implied by the gained spectrum
  bool detected_inactive = false;
};

struct NrResult {
  Pcm pcm;
  std::vector<NrTraceRow> trace;  // one row per hop
};

class NrProcessor {
 public:
  explicit NrProcessor(const NrConfig& cfg = {}) : cfg_(cfg) {}

  // Standalone: aggressive policy, internal estimate, inactivity from the
  // energy detector.
  NrResult run(const Pcm& in);

  // Guided: one directive per frame (ceil(len / kFrameLen) of them, else the
  // state stream is misaligned with the audio). Policy changes crossfade in
  // gain-parameter space over the directive's crossfade_hops, so a fade
  // between two policies never leaves the gain range the policies span.
  NrResult run(const Pcm& in, const std::vector<EnhancementDirective>& directives);

  // Test hook: collect the per-hop gain vectors applied to the spectrum.
  void capture_gains(std::vector<std::array<double, kNumBins>>* sink) {
    gain_sink_ = sink;
  }

 private:
  NrResult process(const Pcm& in,
                   const std::vector<EnhancementDirective>* directives);

  NrConfig cfg_;
  std::vector<std::array<double, kNumBins>>* gain_sink_ = nullptr;
};

}  // namespace gve

#endif  // GVE_NOISE_REDUCTION_HPP_
