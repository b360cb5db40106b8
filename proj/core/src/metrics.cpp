// core/src/metrics.cpp

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

#include "gve/metrics.hpp"

#include <cmath>

#include "gve/spectral.hpp"

namespace gve {

namespace {

// Marks noise-only frames that count for the noise measures: each
// consecutive noise-only run contributes from its (exclude+1)-th frame on.
std::vector<bool> counted_noise_frames(const std::vector<SegmentClass>& labels,
                                       int exclude) {
  std::vector<bool> counted(labels.size(), false);
  int run = 0;
  for (size_t f = 0; f < labels.size(); ++f) {
    if (labels[f] == SegmentClass::kNoiseOnly) {
      if (run >= exclude) counted[f] = true;
      ++run;
    } else {
      run = 0;
    }
  }
  return counted;
}

}  // namespace

double suppression_db(const Pcm& input, const Pcm& output,
                      const std::vector<SegmentClass>& labels,
                      int exclude_onset_frames) {
  if (input.size() != output.size())
    throw Error(ErrorCode::kInvalidArgument,
                "input and output lengths differ");
  const size_t frames = (input.size() + kFrameLen - 1) / kFrameLen;
  if (labels.size() != frames)
    throw Error(ErrorCode::kInvalidArgument,
                "label count " + std::to_string(labels.size()) +
                    " does not match " + std::to_string(frames) + " frames");

  const std::vector<bool> counted =
      counted_noise_frames(labels, exclude_onset_frames);
  double in_energy = 0.0;
  double out_energy = 0.0;
  size_t n_counted = 0;
  for (size_t f = 0; f < frames; ++f) {
    if (!counted[f]) continue;
    const size_t begin = f * kFrameLen;
    const size_t len = std::min<size_t>(kFrameLen, input.size() - begin);
    in_energy += mean_square(input.data() + begin, len);
    out_energy += mean_square(output.data() + begin, len);
    ++n_counted;
  }
  if (n_counted == 0)
    throw Error(ErrorCode::kNoNoiseFrames,
                "no counted noise-only frames in the label set");
  return power_to_db(in_energy) - power_to_db(out_energy);
}

std::vector<double> residual_trace_db(const Pcm& x) {
  const size_t hops = (x.size() + kHopLen - 1) / kHopLen;
  std::vector<double> trace(hops);
  for (size_t h = 0; h < hops; ++h) {
    const size_t begin = h * kHopLen;
    const size_t len = std::min<size_t>(kHopLen, x.size() - begin);
    trace[h] = power_to_db(mean_square(x.data() + begin, len));
  }
  return trace;
}

std::vector<bool> detected_inactive_frames(const std::vector<NrTraceRow>& trace) {
  const size_t frames = (trace.size() + kHopsPerFrame - 1) / kHopsPerFrame;
  std::vector<bool> detected(frames, false);
  for (size_t f = 0; f < frames; ++f)
    detected[f] = trace[f * kHopsPerFrame].detected_inactive;
  return detected;
}

double silence_detection_rate(const std::vector<bool>& detected,
                              const std::vector<SegmentClass>& labels,
                              int exclude_onset_frames) {
  if (detected.size() != labels.size())
    throw Error(ErrorCode::kInvalidArgument,
                "detection flags and labels differ in length");
  const std::vector<bool> counted =
      counted_noise_frames(labels, exclude_onset_frames);
  size_t n_counted = 0;
  size_t n_detected = 0;
  for (size_t f = 0; f < labels.size(); ++f) {
    if (!counted[f]) continue;
    ++n_counted;
    if (detected[f]) ++n_detected;
  }
  if (n_counted == 0)
    throw Error(ErrorCode::kNoNoiseFrames,
                "no counted noise-only frames in the label set");
  return static_cast<double>(n_detected) / static_cast<double>(n_counted);
}

double log_spectral_distance_db(const Pcm& reference, const Pcm& test,
                                const std::vector<bool>* hop_mask) {
  if (reference.size() != test.size())
    throw Error(ErrorCode::kInvalidArgument, "signal lengths differ");
  const std::vector<SpectralFrame> ref_hops = analyze(reference);
  const std::vector<SpectralFrame> test_hops = analyze(test);
  double sum = 0.0;
  size_t count = 0;
  for (size_t h = 0; h < ref_hops.size(); ++h) {
    if (hop_mask) {
      if (h >= hop_mask->size() || !(*hop_mask)[h]) continue;
    }
    const std::array<double, kNumBins> pr = ref_hops[h].power();
    const std::array<double, kNumBins> pt = test_hops[h].power();
    double acc = 0.0;
    for (int k = 0; k < kNumBins; ++k) {
      const double d = power_to_db(pr[k]) - power_to_db(pt[k]);
      acc += d * d;
    }
    sum += std::sqrt(acc / kNumBins);
    ++count;
  }
  if (count == 0)
    throw Error(ErrorCode::kInvalidArgument, "no hops selected for distance");
  return sum / static_cast<double>(count);
}

std::vector<bool> hops_with_label(const std::vector<SegmentClass>& labels,
                                  SegmentClass which) {
  std::vector<bool> mask(labels.size() * kHopsPerFrame, false);
  for (size_t f = 0; f < labels.size(); ++f)
    if (labels[f] == which)
      for (int h = 0; h < kHopsPerFrame; ++h) mask[f * kHopsPerFrame + h] = true;
  return mask;
}

}  // namespace gve
