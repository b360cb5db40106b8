// gve/guidance.hpp

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

#ifndef GVE_GUIDANCE_HPP_
#define GVE_GUIDANCE_HPP_

#include <vector>

#include "gve/decoder.hpp"
#include "gve/spectral.hpp"
#include "gve/types.hpp"

// Maps per-frame decoder state to enhancement directives: which noise
// reduction policy to run, where its noise estimate comes from, and which
// dynamic-range curve applies. This is the seam between the decoder and the
// post filters; everything downstream consumes directives, not frames.

namespace gve {

enum class NrPolicy { kBypass, kSoft, kAggressive };
enum class NoiseSource { kInternal, kDecoderGuided };
enum class MdrpCurve { kSpeechCurve, kSilenceCurve };

const char* to_string(NrPolicy policy);
const char* to_string(NoiseSource source);
const char* to_string(MdrpCurve curve);

struct EnhancementDirective {
  NrPolicy nr_policy = NrPolicy::kAggressive;
  NoiseSource noise_source = NoiseSource::kInternal;
  MdrpCurve mdrp_curve = MdrpCurve::kSpeechCurve;
  // When the source is kDecoderGuided, the noise spectrum to use, expanded
  // from the decoder's comfort-noise envelope.
  std::array<double, kNumBins> guided_noise_psd{};
  // Freeze-variant only: overwrite the internal tracker with the guided
  // spectrum instead of letting it keep adapting.
  bool freeze_nr_estimation = false;
  // Hops to crossfade over when this directive changed policy or curve
  // relative to the previous frame; 0 means no transition.
  int crossfade_hops = 0;
};

struct ControllerConfig {
  // Policy while the decoder reports music content; Soft preserves texture,
  // Bypass disables reduction entirely.
  NrPolicy music_policy = NrPolicy::kSoft;
  // If set, guided frames overwrite the noise tracker state (freeze variant)
  // rather than only substituting the estimate for the current frame.
  bool freeze_variant = false;
  int crossfade_hops = 4;
};

// Stateful only in that it remembers the previous directive to flag
// transitions; given the same state sequence it always produces the same
// directive sequence.
class GuidanceController {
 public:
  explicit GuidanceController(const ControllerConfig& cfg = {}) : cfg_(cfg) {}

  EnhancementDirective direct(const DecoderState& state);

 private:
  ControllerConfig cfg_;
  bool have_prev_ = false;
  NrPolicy prev_policy_ = NrPolicy::kAggressive;
  MdrpCurve prev_curve_ = MdrpCurve::kSpeechCurve;
};

// Convenience: one directive per decoder state, from a fresh controller.
std::vector<EnhancementDirective> plan_directives(
    const std::vector<DecoderState>& states, const ControllerConfig& cfg = {});

}  // namespace gve

#endif  // GVE_GUIDANCE_HPP_
