// core/src/noise_reduction.cpp

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

#include "gve/noise_reduction.hpp"

#include <algorithm>
#include <cmath>

namespace gve {

GainParams gain_params(NrPolicy policy, const NrConfig& cfg) {
  switch (policy) {
    case NrPolicy::kBypass:
      return {0.0, 1.0};
    case NrPolicy::kSoft:
      return {cfg.beta_soft, db_to_amplitude(cfg.floor_soft_db)};
    case NrPolicy::kAggressive:
      return {cfg.beta_aggressive, db_to_amplitude(cfg.floor_aggressive_db)};
  }
  return {0.0, 1.0};
}

NoiseEstimator::NoiseEstimator(const NrConfig& cfg) : cfg_(cfg) {
  // The initial subwindow holds the zero spectrum; the estimate stays zero
  // until it ages out, which is the tracker's honest warm-up.
  minima_.push_back(smoothed_);
}

void NoiseEstimator::update(const std::array<double, kNumBins>& power) {
  for (int k = 0; k < kNumBins; ++k) {
    smoothed_[k] =
        cfg_.alpha_smooth * smoothed_[k] + (1.0 - cfg_.alpha_smooth) * power[k];
    minima_.back()[k] = std::min(minima_.back()[k], smoothed_[k]);
  }
  if (++hops_into_subwindow_ >= cfg_.subwindow_hops) {
    hops_into_subwindow_ = 0;
    minima_.push_back(smoothed_);
    while (static_cast<int>(minima_.size()) > cfg_.subwindow_count)
      minima_.pop_front();
  }
}

void NoiseEstimator::seed(const std::array<double, kNumBins>& psd) {
  smoothed_ = psd;
  for (auto& sub : minima_) sub = psd;
}

std::array<double, kNumBins> NoiseEstimator::estimate() const {
  std::array<double, kNumBins> est = minima_.front();
  for (const auto& sub : minima_)
    for (int k = 0; k < kNumBins; ++k) est[k] = std::min(est[k], sub[k]);
  for (int k = 0; k < kNumBins; ++k) est[k] *= cfg_.bias;
  return est;
}

std::array<double, kNumBins> compute_gain(
    const std::array<double, kNumBins>& power,
    const std::array<double, kNumBins>& noise, const GainParams& params) {
  std::array<double, kNumBins> g;
  for (int k = 0; k < kNumBins; ++k) {
    const double ratio = params.beta * noise[k] / std::max(power[k], kPowerEpsilon);
    g[k] = std::max(std::sqrt(std::max(0.0, 1.0 - ratio)), params.floor_linear);
  }
  return g;
}

namespace {

// Crossfade between gain parameter sets. Interpolating parameters rather
// than output samples keeps each intermediate hop inside the gain family,
// so ordering properties between policies survive the transition.
struct Fade {
  bool active = false;
  GainParams from;
  GainParams to;
  int pos = 0;
  int total = 0;

  GainParams advance() {
    if (!active) return to;
    const double t = static_cast<double>(pos + 1) / total;
    GainParams p;
    p.beta = (1.0 - t) * from.beta + t * to.beta;
    p.floor_linear = (1.0 - t) * from.floor_linear + t * to.floor_linear;
    if (++pos >= total) active = false;
    return p;
  }
};

// Frame-energy inactivity detector for standalone runs: mirrors the
// encoder's raw activity rule (floor margin + absolute gate, floor tracked
// over a sliding history that the current frame enters afterwards).
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

NrResult NrProcessor::run(const Pcm& in) { return process(in, nullptr); }

NrResult NrProcessor::run(const Pcm& in,
                          const std::vector<EnhancementDirective>& directives) {
  return process(in, &directives);
}

NrResult NrProcessor::process(const Pcm& in,
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

  NoiseEstimator estimator(cfg_);
  EnergyDetector detector(cfg_.detector_margin_db, cfg_.detector_gate_dbfs,
                          cfg_.detector_history_frames);
  Fade fade;
  fade.to = gain_params(directives && !directives->empty()
                            ? directives->front().nr_policy
                            : NrPolicy::kAggressive,
                        cfg_);
  GainParams last_params = fade.to;
  bool frame_detected_inactive = false;

  NrResult result;
  result.trace.reserve(hops.size());

  for (size_t h = 0; h < hops.size(); ++h) {
    const size_t f = h / kHopsPerFrame;
    const EnhancementDirective* d = directives ? &(*directives)[f] : nullptr;

    if (h % kHopsPerFrame == 0) {
      if (d) {
        const GainParams target = gain_params(d->nr_policy, cfg_);
        if (!(target == fade.to)) {
          if (d->crossfade_hops > 0) {
            // Restarting mid-fade picks up from the parameters in effect.
            fade.from = last_params;
            fade.to = target;
            fade.pos = 0;
            fade.total = d->crossfade_hops;
            fade.active = true;
          } else {
            fade = Fade{};
            fade.to = target;
          }
        }
      } else {
        frame_detected_inactive =
            detector.detect_inactive(padded.data() + f * kFrameLen, kFrameLen);
      }
    }

    const bool guided_hop = d && d->noise_source == NoiseSource::kDecoderGuided;
    const std::array<double, kNumBins> power = hops[h].power();

    if (guided_hop && d->freeze_nr_estimation) {
      estimator.seed(d->guided_noise_psd);
    } else {
      estimator.update(power);
    }
    // Guidance states the level the decoder actually synthesized, so it acts
    // as a floor on the noise reference; the internal estimate can only add
    // evidence of more noise, never less.
    std::array<double, kNumBins> noise = estimator.estimate();
    if (guided_hop)
      for (int k = 0; k < kNumBins; ++k)
        noise[k] = std::max(noise[k], d->guided_noise_psd[k]);

    const GainParams params = fade.advance();
    last_params = params;

    // Gains are computed against the smoothed periodogram (stable under the
    // raw spectrum's hop-to-hop variance) and applied to the raw bins.
    const std::array<double, kNumBins> gains =
        compute_gain(estimator.smoothed(), noise, params);
    for (int k = 0; k < kNumBins; ++k) hops[h].bins[k] *= gains[k];
    if (gain_sink_) gain_sink_->push_back(gains);

    NrTraceRow row;
    row.hop = static_cast<int>(h);
    row.time_s = static_cast<double>(h) * kHopLen / kSampleRate;
    row.provenance = guided_hop ? NoiseSource::kDecoderGuided : NoiseSource::kInternal;
    row.policy = d ? d->nr_policy : NrPolicy::kAggressive;
    double gain_db_sum = 0.0;
    double noise_sum = 0.0;
    std::array<double, kNumBins> out_power;
    for (int k = 0; k < kNumBins; ++k) {
      gain_db_sum += amplitude_to_db(gains[k]);
      noise_sum += noise[k];
      out_power[k] = gains[k] * gains[k] * power[k];
    }
    row.mean_gain_db = gain_db_sum / kNumBins;
    row.mean_noise_db = power_to_db(noise_sum / kNumBins);
    row.residual_db = power_to_db(spectral_mean_square(out_power));
    row.detected_inactive = d ? guided_hop : frame_detected_inactive;
    result.trace.push_back(row);
  }

  result.pcm = synthesize(hops);
  result.pcm.resize(in.size());
  return result;
}

}  // namespace gve
