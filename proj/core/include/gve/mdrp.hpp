// gve/mdrp.hpp

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

#ifndef GVE_MDRP_HPP_
#define GVE_MDRP_HPP_

#include <vector>

#include "gve/guidance.hpp"
#include "gve/spectral.hpp"
#include "gve/types.hpp"

// Multiband dynamic range processing: three spectral bands, each driven by a
// level-to-gain curve with attack/release ballistics. Guidance switches
// between a speech curve set (boosts quiet speech, tames loud) and a silence
// curve set (identity, so background stretches are not pumped up).

namespace gve {

// MDRP bands in bin space; the DC bin is left untouched.
inline constexpr int kNumMdrpBands = 3;
int mdrp_band_edge(int band);  // band b covers bins [edge(b), edge(b+1))

struct CurveKnot {
  double level_db = 0.0;
  double gain_db = 0.0;
};

// Piecewise-linear level-to-gain map with flat extension beyond the outer
// knots. Knot levels must be strictly increasing.
class DrcCurve {
 public:
  DrcCurve() : knots_{{0.0, 0.0}} {}
  explicit DrcCurve(std::vector<CurveKnot> knots);

  double gain_at(double level_db) const;
  const std::vector<CurveKnot>& knots() const { return knots_; }

 private:
  std::vector<CurveKnot> knots_;
};

DrcCurve default_speech_curve();
DrcCurve default_silence_curve();

struct MdrpConfig {
  MdrpConfig();

  // Per-hop smoothing of the band gain towards its target, in dB: attack
  // when the gain is falling, release when rising. Values are retained
  // fractions, so attack 0.5 reacts within a couple of hops and release 0.9
  // recovers slowly.
  double attack_alpha = 0.5;
  double release_alpha = 0.9;

  std::array<DrcCurve, kNumMdrpBands> speech_curves;
  std::array<DrcCurve, kNumMdrpBands> silence_curves;

  // Standalone inactivity detector for the trace, as in NrConfig.
  double detector_margin_db = 6.0;
  double detector_gate_dbfs = -60.0;
  int detector_history_frames = 100;
};

struct MdrpTraceRow {
  int hop = 0;
  int band = 0;
  double level_db = 0.0;
  double target_gain_db = 0.0;
  double applied_gain_db = 0.0;
  MdrpCurve curve = MdrpCurve::kSpeechCurve;
  bool detected_inactive = false;
};

struct MdrpResult {
  Pcm pcm;
  std::vector<MdrpTraceRow> trace;  // kNumMdrpBands rows per hop
};

class MdrpProcessor {
 public:
  explicit MdrpProcessor(const MdrpConfig& cfg = {}) : cfg_(cfg) {}

  // Standalone: speech curves throughout.
  MdrpResult run(const Pcm& in);

  // Guided: one directive per frame. On a curve switch the applied gain
  // fades linearly from its held value to the new curve's target over the
  // directive's crossfade_hops, overriding ballistics for the duration, so a
  // mistimed boost is cut off within the fade rather than decaying at the
  // release rate.
  MdrpResult run(const Pcm& in, const std::vector<EnhancementDirective>& directives);

 private:
  MdrpResult process(const Pcm& in,
                     const std::vector<EnhancementDirective>* directives);

  MdrpConfig cfg_;
};

}  // namespace gve

#endif  // GVE_MDRP_HPP_
