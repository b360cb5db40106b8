// src/spectral.cpp

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

#include "gve/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace gve {
namespace {

// sum(w^2) of the periodic Hann window: 0.375 * kFrameLen, exactly.
constexpr double kWindowEnergy = 0.375 * kFrameLen;

constexpr std::array<int, kNumSidBands + 1> kBandEdges = {
    0,   13,  26,  39,  52,  65,  78,  91,  104, 117, 130,
    143, 156, 169, 182, 195, 208, 220, 232, 244, 257};

// FFTW plans are created once and shared. Creation is not thread-safe, so it
// is guarded; execution through the new-array interface is. FFTW_UNALIGNED
// keeps the plans valid for any double buffer.
fftw_plan forward_plan() {
  static fftw_plan plan = nullptr;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<double> in(kFftSize);
    std::vector<std::complex<double>> out(kNumBins);
    plan = fftw_plan_dft_r2c_1d(kFftSize, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  });
  return plan;
}

fftw_plan inverse_plan() {
  static fftw_plan plan = nullptr;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<std::complex<double>> in(kNumBins);
    std::vector<double> out(kFftSize);
    plan = fftw_plan_dft_c2r_1d(kFftSize,
                                reinterpret_cast<fftw_complex*>(in.data()),
                                out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  });
  return plan;
}

}  // namespace

int band_edge(int band) { return kBandEdges[band]; }

int band_of_bin(int bin) {
  for (int b = 0; b < kNumSidBands; ++b)
    if (bin < kBandEdges[b + 1]) return b;
  return kNumSidBands - 1;
}

const std::array<double, kFrameLen>& analysis_window() {
  static const std::array<double, kFrameLen> window = [] {
    std::array<double, kFrameLen> w;
    for (int n = 0; n < kFrameLen; ++n)
      w[n] = 0.5 * (1.0 - std::cos(2.0 * M_PI * n / kFrameLen));
    return w;
  }();
  return window;
}

int hop_count(std::size_t n) {
  return static_cast<int>((n + kHopLen - 1) / kHopLen);
}

std::vector<SpectralFrame> analyze(const Pcm& pcm) {
  const auto& window = analysis_window();
  const double scale = 1.0 / std::sqrt(kWindowEnergy);
  const int hops = hop_count(pcm.size());

  std::vector<SpectralFrame> frames(hops);
  std::vector<double> buf(kFftSize);
  std::vector<std::complex<double>> spec(kNumBins);
  for (int h = 0; h < hops; ++h) {
    const std::size_t start = static_cast<std::size_t>(h) * kHopLen;
    for (int n = 0; n < kFrameLen; ++n) {
      const std::size_t i = start + n;
      buf[n] = i < pcm.size() ? pcm[i] * window[n] : 0.0;
    }
    std::fill(buf.begin() + kFrameLen, buf.end(), 0.0);
    fftw_execute_dft_r2c(forward_plan(), buf.data(),
                         reinterpret_cast<fftw_complex*>(spec.data()));
    frames[h].hop_index = h;
    for (int k = 0; k < kNumBins; ++k) frames[h].bins[k] = spec[k] * scale;
  }
  return frames;
}

std::array<double, kFftSize> inverse_frame(const SpectralFrame& frame) {
  const double scale = std::sqrt(kWindowEnergy) / kFftSize;
  std::vector<std::complex<double>> spec(kNumBins);
  for (int k = 0; k < kNumBins; ++k) spec[k] = frame.bins[k];
  // c2r requires a purely real DC and Nyquist bin.
  spec[0] = spec[0].real();
  spec[kNumBins - 1] = spec[kNumBins - 1].real();

  std::array<double, kFftSize> out;
  fftw_execute_dft_c2r(inverse_plan(),
                       reinterpret_cast<fftw_complex*>(spec.data()), out.data());
  for (double& v : out) v *= scale;
  return out;
}

Pcm synthesize(const std::vector<SpectralFrame>& frames) {
  if (frames.empty()) return {};
  Pcm out(static_cast<std::size_t>(frames.size() - 1) * kHopLen + kFftSize, 0.0);
  for (std::size_t h = 0; h < frames.size(); ++h) {
    const std::array<double, kFftSize> chunk = inverse_frame(frames[h]);
    double* dst = out.data() + h * kHopLen;
    for (int n = 0; n < kFftSize; ++n) dst[n] += chunk[n];
  }
  return out;
}

BandEnvelope band_energies(const std::array<double, kNumBins>& power) {
  BandEnvelope env;
  for (int b = 0; b < kNumSidBands; ++b) {
    double acc = 0.0;
    for (int k = kBandEdges[b]; k < kBandEdges[b + 1]; ++k) acc += power[k];
    env.energies_db[b] = power_to_db(acc / (kBandEdges[b + 1] - kBandEdges[b]));
  }
  return env;
}

std::array<double, kNumBins> expand_envelope(const BandEnvelope& env) {
  std::array<double, kNumBins> psd;
  for (int b = 0; b < kNumSidBands; ++b) {
    const double p = db_to_power(env.energies_db[b]);
    for (int k = kBandEdges[b]; k < kBandEdges[b + 1]; ++k) psd[k] = p;
  }
  return psd;
}

double spectral_mean_square(const std::array<double, kNumBins>& power) {
  double acc = power[0] + power[kNumBins - 1];
  for (int k = 1; k < kNumBins - 1; ++k) acc += 2.0 * power[k];
  return acc / kFftSize;
}

}  // namespace gve
