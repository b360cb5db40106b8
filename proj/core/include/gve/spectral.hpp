// gve/spectral.hpp

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

#ifndef GVE_SPECTRAL_HPP_
#define GVE_SPECTRAL_HPP_

#include <array>
#include <complex>
#include <vector>

#include "gve/types.hpp"

// Shared STFT machinery. Analysis applies a periodic Hann window of length
// kFrameLen at kHopLen hops and a zero-padded kFftSize real FFT. The window
// satisfies the constant-overlap-add property at 50% hop, so synthesis is a
// plain overlap-add of inverse transforms and analyze -> synthesize
// reconstructs the interior of the input to floating point accuracy.
//
// Bins are scaled by 1/sqrt(sum(w^2)) so that |bin|^2 is calibrated to
// signal power: stationary noise with mean-square power p has expected
// per-bin power p, making band energies read directly in dBFS. Synthesis
// undoes the scale.

namespace gve {

struct SpectralFrame {
  int hop_index = 0;
  std::array<std::complex<double>, kNumBins> bins{};

  // |bin|^2 per bin.
  std::array<double, kNumBins> power() const {
    std::array<double, kNumBins> p;
    for (int k = 0; k < kNumBins; ++k) p[k] = std::norm(bins[k]);
    return p;
  }
};

// Log-domain 20-band spectral envelope, dB re full scale.
struct BandEnvelope {
  std::array<double, kNumSidBands> energies_db{};

  bool operator==(const BandEnvelope&) const = default;
};

// Band k covers bins [band_edge(k), band_edge(k+1)): sixteen 13-bin bands,
// then 12, 12, 12 and a final 13 to cover all kNumBins bins.
int band_edge(int band);
int band_of_bin(int bin);

// The analysis window (periodic Hann, length kFrameLen).
const std::array<double, kFrameLen>& analysis_window();

// Number of analysis hops for an input of n samples: one per started hop.
int hop_count(std::size_t n);

// STFT. Hop h covers samples [kHopLen*h, kHopLen*h + kFrameLen); the tail is
// zero-padded. Empty input produces no frames.
std::vector<SpectralFrame> analyze(const Pcm& pcm);

// Inverse transform of a single frame: the kFftSize-sample overlap-add
// contribution of one hop (analysis scaling undone, imaginary parts of the
// DC and Nyquist bins ignored).
std::array<double, kFftSize> inverse_frame(const SpectralFrame& frame);

// Overlap-add resynthesis. Output has kHopLen*(frames-1) + kFftSize samples;
// callers trim to the length they tracked. Frames must be in hop order.
Pcm synthesize(const std::vector<SpectralFrame>& frames);

// 20-band log envelope of a power spectrum: per band, the dB mean power.
BandEnvelope band_energies(const std::array<double, kNumBins>& power);

// Piecewise-constant expansion of a band envelope back to per-bin linear
// power. Right inverse of band_energies on band-constant spectra.
std::array<double, kNumBins> expand_envelope(const BandEnvelope& env);

// Mean-square signal power implied by a one-sided power spectrum (Parseval
// with the analysis calibration). Matches time-domain mean square for
// stationary content.
double spectral_mean_square(const std::array<double, kNumBins>& power);

}  // namespace gve

#endif  // GVE_SPECTRAL_HPP_
