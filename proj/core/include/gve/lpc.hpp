// gve/lpc.hpp

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

#ifndef GVE_LPC_HPP_
#define GVE_LPC_HPP_

#include <array>

#include "gve/types.hpp"

namespace gve {

// Pitch search range in samples: 500 Hz down to 62.5 Hz. The upper lag is
// capped so at least 64 samples overlap inside one frame; the normalized
// autocorrelation is meaningless beyond that.
constexpr int kPitchMinLag = 32;
constexpr int kPitchMaxLag = 256;
constexpr double kPitchThreshold = 0.5;

// Order-kLpcOrder forward predictor coefficients for one frame, by the
// autocorrelation method (Levinson-Durbin, lag 0 scaled by 1+1e-4).
// Convention: x_hat[n] = sum_i a[i-1] * x[n-i]. Frames with energy below
// 1e-12, or frames where the recursion loses minimum phase, yield all-zero
// coefficients.
std::array<double, kLpcOrder> analyze_lpc(const double* frame, int n = kFrameLen);

// Pitch lag for one frame: the smallest local maximum of the normalized
// autocorrelation within 2% of its global peak, or 0 when the peak is below
// kPitchThreshold (unvoiced / noise) or the frame is silent.
int estimate_pitch(const double* frame, int n = kFrameLen);

}  // namespace gve

#endif  // GVE_LPC_HPP_
