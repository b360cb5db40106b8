// core/src/guidance.cpp

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

#include "gve/guidance.hpp"

namespace gve {

const char* to_string(NrPolicy policy) {
  switch (policy) {
    case NrPolicy::kBypass: return "bypass";
    case NrPolicy::kSoft: return "soft";
    case NrPolicy::kAggressive: return "aggressive";
  }
  return "?";
}

const char* to_string(NoiseSource source) {
  switch (source) {
    case NoiseSource::kInternal: return "internal";
    case NoiseSource::kDecoderGuided: return "decoder";
  }
  return "?";
}

const char* to_string(MdrpCurve curve) {
  switch (curve) {
    case MdrpCurve::kSpeechCurve: return "speech";
    case MdrpCurve::kSilenceCurve: return "silence";
  }
  return "?";
}

EnhancementDirective GuidanceController::direct(const DecoderState& state) {
  EnhancementDirective d;

  const bool inactive = state.frame_type == FrameCategory::kSid ||
                        state.frame_type == FrameCategory::kNoData;
  d.mdrp_curve = inactive ? MdrpCurve::kSilenceCurve : MdrpCurve::kSpeechCurve;

  if (state.coding_mode == CodingMode::kMusic) {
    // Music overrides the policy choice but never borrows the decoder's
    // noise spectrum: the comfort-noise envelope describes background noise,
    // not the music itself.
    d.nr_policy = cfg_.music_policy;
    d.noise_source = NoiseSource::kInternal;
  } else if (inactive) {
    d.nr_policy = NrPolicy::kAggressive;
    d.noise_source = NoiseSource::kDecoderGuided;
    d.guided_noise_psd = expand_envelope(state.cng_envelope);
    d.freeze_nr_estimation = cfg_.freeze_variant;
  } else {
    d.nr_policy = NrPolicy::kAggressive;
    d.noise_source = NoiseSource::kInternal;
  }

  if (have_prev_ &&
      (d.nr_policy != prev_policy_ || d.mdrp_curve != prev_curve_)) {
    d.crossfade_hops = cfg_.crossfade_hops;
  }
  have_prev_ = true;
  prev_policy_ = d.nr_policy;
  prev_curve_ = d.mdrp_curve;
  return d;
}

std::vector<EnhancementDirective> plan_directives(
    const std::vector<DecoderState>& states, const ControllerConfig& cfg) {
  GuidanceController controller(cfg);
  std::vector<EnhancementDirective> out;
  out.reserve(states.size());
  for (const DecoderState& st : states) out.push_back(controller.direct(st));
  return out;
}

}  // namespace gve
