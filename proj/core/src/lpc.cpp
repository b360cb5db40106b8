// src/lpc.cpp

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

#include "gve/lpc.hpp"

#include <cmath>

namespace gve {

std::array<double, kLpcOrder> analyze_lpc(const double* frame, int n) {
  std::array<double, kLpcOrder> a{};

  std::array<double, kLpcOrder + 1> r{};
  for (int lag = 0; lag <= kLpcOrder; ++lag) {
    double acc = 0.0;
    for (int i = lag; i < n; ++i) acc += frame[i] * frame[i - lag];
    r[lag] = acc;
  }
  if (r[0] <= 1e-12) return a;  // degenerate frame
  r[0] *= 1.0 + 1e-4;           // white-noise regularization

  double err = r[0];
  for (int i = 1; i <= kLpcOrder; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc -= a[j - 1] * r[i - j];
    const double k = acc / err;
    if (!(std::fabs(k) < 1.0)) {
      // Reflection coefficient escaped the unit interval; with the lag-0
      // regularization this only happens on numerically hostile frames.
      a.fill(0.0);
      return a;
    }
    std::array<double, kLpcOrder> next = a;
    next[i - 1] = k;
    for (int j = 1; j < i; ++j) next[j - 1] = a[j - 1] - k * a[i - j - 1];
    a = next;
    err *= 1.0 - k * k;
  }
  return a;
}

int estimate_pitch(const double* frame, int n) {
  double energy = 0.0;
  for (int i = 0; i < n; ++i) energy += frame[i] * frame[i];
  if (energy <= 1e-12) return 0;

  const int max_lag = std::min(kPitchMaxLag, n - 1);
  std::array<double, kPitchMaxLag + 1> score{};
  for (int lag = kPitchMinLag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int i = lag; i < n; ++i) acc += frame[i] * frame[i - lag];
    // Rescale by the overlap so the score of a periodic signal does not
    // decay with lag; this keeps the true period competitive with its
    // multiples while short overlaps stay bounded.
    score[lag] = acc / energy * (static_cast<double>(n) / (n - lag));
  }

  double peak = 0.0;
  for (int lag = kPitchMinLag; lag <= max_lag; ++lag) peak = std::max(peak, score[lag]);
  if (peak < kPitchThreshold) return 0;

  // Among local maxima within 2% of the peak, prefer the smallest lag: for
  // periodic input the score is near 1 at every multiple of the period and
  // the smallest one is the period itself.
  for (int lag = kPitchMinLag; lag <= max_lag; ++lag) {
    const double left = lag > kPitchMinLag ? score[lag - 1] : -1.0;
    const double right = lag < max_lag ? score[lag + 1] : -1.0;
    if (score[lag] >= left && score[lag] >= right && score[lag] >= 0.98 * peak)
      return lag;
  }
  return 0;
}

}  // namespace gve
