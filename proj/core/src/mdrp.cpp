// core/src/mdrp.cpp

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

#include "gve/mdrp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace gve {

int mdrp_band_edge(int band) {
  static constexpr std::array<int, kNumMdrpBands + 1> kEdges = {1, 33, 129,
                                                                kNumBins};
  return kEdges[static_cast<size_t>(band)];
}

DrcCurve::DrcCurve(std::vector<CurveKnot> knots) : knots_(std::move(knots)) {
  if (knots_.empty())
    throw Error(ErrorCode::kInvalidArgument, "curve needs at least one knot");
  for (size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].level_db < knots_[i].level_db))
      throw Error(ErrorCode::kInvalidArgument,
                  "curve knot levels must be strictly increasing");
}

double DrcCurve::gain_at(double level_db) const {
  if (level_db <= knots_.front().level_db) return knots_.front().gain_db;
  if (level_db >= knots_.back().level_db) return knots_.back().gain_db;
  for (size_t i = 1; i < knots_.size(); ++i) {
    if (level_db <= knots_[i].level_db) {
      const CurveKnot& a = knots_[i - 1];
      const CurveKnot& b = knots_[i];
      const double t = (level_db - a.level_db) / (b.level_db - a.level_db);
      return a.gain_db + t * (b.gain_db - a.gain_db);
    }
  }
  return knots_.back().gain_db;
}

DrcCurve default_speech_curve() {
  // Quiet speech gets a fixed boost, nominal levels pass through, loud
  // content is pulled down towards a comfortable range.
  return DrcCurve({{-80.0, 9.0}, {-50.0, 9.0}, {-20.0, 0.0}, {0.0, -10.0}});
}

DrcCurve default_silence_curve() { return DrcCurve({{0.0, 0.0}}); }

MdrpConfig::MdrpConfig() {
  speech_curves.fill(default_speech_curve());
  silence_curves.fill(default_silence_curve());
}

namespace {

class EnergyDetector {
 public:
  EnergyDetector(double margin_db, double gate_dbfs, int history)
      : margin_db_(margin_db), gate_dbfs_(gate_dbfs), history_(history) {}

  bool detect_inactive(const double* frame, int n) {
    const double e = power_to_db(mean_square(frame, n));
    double floor_db = -120.0;
    if (!history_db_.empty())
      floor_db = *std::min_element(history_db_.begin(), history_db_.end());
    history_db_.push_back(e);
    while (static_cast<int>(history_db_.size()) > history_) history_db_.pop_front();
    const bool active = e > floor_db + margin_db_ && e > gate_dbfs_;
    return !active;
  }

 private:
  double margin_db_;
  double gate_dbfs_;
  int history_;
  std::deque<double> history_db_;
};

}  // namespace

MdrpResult MdrpProcessor::run(const Pcm& in) { return process(in, nullptr); }

MdrpResult MdrpProcessor::run(const Pcm& in,
                              const std::vector<EnhancementDirective>& directives) {
  return process(in, &directives);
}

MdrpResult MdrpProcessor::process(const Pcm& in,
                                  const std::vector<EnhancementDirective>* directives) {
  const size_t frame_count = (in.size() + kFrameLen - 1) / kFrameLen;
  if (directives && directives->size() != frame_count)
    throw Error(ErrorCode::kStateMisalignment,
                "directive count " + std::to_string(directives->size()) +
                    " does not match " + std::to_string(frame_count) +
                    " audio frames");

  Pcm padded = in;
  padded.resize(frame_count * kFrameLen, 0.0);
  std::vector<SpectralFrame> hops = analyze(padded);

  EnergyDetector detector(cfg_.detector_margin_db, cfg_.detector_gate_dbfs,
                          cfg_.detector_history_frames);
  MdrpCurve curve = MdrpCurve::kSpeechCurve;
  std::array<double, kNumMdrpBands> gain_db{};  // smoothed, applied last hop
  std::array<double, kNumMdrpBands> hold_db{};  // frozen at a curve switch
  bool fading = false;
  int fade_pos = 0;
  int fade_total = 0;
  bool frame_detected_inactive = false;

  MdrpResult result;
  result.trace.reserve(hops.size() * kNumMdrpBands);

  for (size_t h = 0; h < hops.size(); ++h) {
    const size_t f = h / kHopsPerFrame;
    const EnhancementDirective* d = directives ? &(*directives)[f] : nullptr;

    if (h % kHopsPerFrame == 0) {
      if (d) {
        if (d->mdrp_curve != curve) {
          curve = d->mdrp_curve;
          if (d->crossfade_hops > 0) {
            hold_db = gain_db;
            fading = true;
            fade_pos = 0;
            fade_total = d->crossfade_hops;
          } else {
            fading = false;
          }
        }
      } else {
        frame_detected_inactive =
            detector.detect_inactive(padded.data() + f * kFrameLen, kFrameLen);
      }
    }

    const std::array<DrcCurve, kNumMdrpBands>& curves =
        curve == MdrpCurve::kSpeechCurve ? cfg_.speech_curves
                                         : cfg_.silence_curves;
    const std::array<double, kNumBins> power = hops[h].power();
    const double fade_t =
        fading ? static_cast<double>(fade_pos + 1) / fade_total : 0.0;

    for (int b = 0; b < kNumMdrpBands; ++b) {
      double band_power = 0.0;
      const int lo = mdrp_band_edge(b);
      const int hi = mdrp_band_edge(b + 1);
      for (int k = lo; k < hi; ++k) band_power += power[k];
      const double level_db = power_to_db(band_power / (hi - lo));
      const double target_db = curves[b].gain_at(level_db);

      double applied_db;
      if (fading) {
        applied_db = (1.0 - fade_t) * hold_db[b] + fade_t * target_db;
        gain_db[b] = applied_db;
      } else {
        const double alpha =
            target_db < gain_db[b] ? cfg_.attack_alpha : cfg_.release_alpha;
        gain_db[b] = alpha * gain_db[b] + (1.0 - alpha) * target_db;
        applied_db = gain_db[b];
      }

      const double g = db_to_amplitude(applied_db);
      for (int k = lo; k < hi; ++k) hops[h].bins[k] *= g;

      MdrpTraceRow row;
      row.hop = static_cast<int>(h);
      row.band = b;
      row.level_db = level_db;
      row.target_gain_db = target_db;
      row.applied_gain_db = applied_db;
      row.curve = curve;
      row.detected_inactive =
          d ? curve == MdrpCurve::kSilenceCurve : frame_detected_inactive;
      result.trace.push_back(row);
    }

    if (fading && ++fade_pos >= fade_total) fading = false;
  }

  result.pcm = synthesize(hops);
  result.pcm.resize(in.size());
  return result;
}

}  // namespace gve
