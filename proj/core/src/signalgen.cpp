// core/src/signalgen.cpp

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

#include "gve/signalgen.hpp"

#include <algorithm>
#include <cmath>

#include "gve/rng.hpp"

namespace gve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

size_t frames_for(double seconds) {
  const double f = seconds * kSampleRate / kFrameLen;
  return static_cast<size_t>(std::max(1.0, std::round(f)));
}

void normalize_rms(Pcm& x, double target_rms) {
  const double ms = mean_square(x);
  if (ms <= 0.0) return;
  const double g = target_rms / std::sqrt(ms);
  for (double& v : x) v *= g;
}

void one_pole_lowpass(Pcm& x, double fc, int passes) {
  const double a = 1.0 - std::exp(-kTwoPi * fc / kSampleRate);
  for (int p = 0; p < passes; ++p) {
    double y = 0.0;
    for (double& v : x) {
      y += a * (v - y);
      v = y;
    }
  }
}

void one_pole_highpass(Pcm& x, double fc) {
  const double a = 1.0 - std::exp(-kTwoPi * fc / kSampleRate);
  double y = 0.0;
  for (double& v : x) {
    y += a * (v - y);
    v -= y;
  }
}

// Two-pole resonator; output normalized to unit RMS afterwards by callers.
Pcm resonate(const Pcm& x, double fc, double bw) {
  const double r = std::exp(-kTwoPi * bw / (2.0 * kSampleRate));
  const double a1 = -2.0 * r * std::cos(kTwoPi * fc / kSampleRate);
  const double a2 = r * r;
  Pcm y(x.size(), 0.0);
  double y1 = 0.0, y2 = 0.0;
  for (size_t n = 0; n < x.size(); ++n) {
    const double v = x[n] - a1 * y1 - a2 * y2;
    y[n] = v;
    y2 = y1;
    y1 = v;
  }
  return y;
}

void fade_edges(double* x, size_t n, size_t ramp) {
  ramp = std::min(ramp, n / 2);
  for (size_t i = 0; i < ramp; ++i) {
    const double g = 0.5 - 0.5 * std::cos(kTwoPi / 2.0 * (i + 1) / (ramp + 1));
    x[i] *= g;
    x[n - 1 - i] *= g;
  }
}

// One syllable of voiced excitation: a jittered, shimmered pulse train
// through parallel formant resonators plus a direct path that keeps the top
// band populated. The per-period randomness is what gives speech-like
// material its hop-to-hop spectral flux.
Pcm voiced_syllable(size_t len, double f0, Rng& rng) {
  Pcm pulses(len, 0.0);
  double t = 0.0;
  const double period = kSampleRate / f0;
  while (t < static_cast<double>(len)) {
    const size_t idx = static_cast<size_t>(t);
    if (idx < len) pulses[idx] += 1.0 + 0.35 * (2.0 * rng.uniform() - 1.0);
    t += period * (1.0 + 0.05 * (2.0 * rng.uniform() - 1.0));
  }

  const double f1 = 300.0 + 500.0 * rng.uniform();
  const double f2 = 900.0 + 1200.0 * rng.uniform();
  const double f3 = 2400.0 + 900.0 * rng.uniform();
  Pcm r1 = resonate(pulses, f1, 90.0);
  Pcm r2 = resonate(pulses, f2, 130.0);
  Pcm r3 = resonate(pulses, f3, 180.0);
  normalize_rms(r1, 1.0);
  normalize_rms(r2, 1.0);
  normalize_rms(r3, 1.0);
  Pcm direct = pulses;
  normalize_rms(direct, 1.0);

  Pcm out(len);
  for (size_t n = 0; n < len; ++n)
    out[n] = r1[n] + 0.6 * r2[n] + 0.45 * r3[n] + 0.3 * direct[n];
  normalize_rms(out, 1.0);
  return out;
}

Pcm unvoiced_syllable(size_t len, Rng& rng) {
  Pcm out(len);
  for (double& v : out) v = rng.gaussian();
  one_pole_highpass(out, 2000.0);
  normalize_rms(out, 0.7);
  return out;
}

// A burst is a run of syllables with fresh pitch and formants each, plus a
// slow syllabic amplitude ripple. Normalized to unit RMS; scaled by caller.
Pcm speech_burst(size_t len, Rng& rng) {
  Pcm out(len, 0.0);
  size_t pos = 0;
  while (pos < len) {
    const size_t syl = std::min(
        len - pos,
        static_cast<size_t>((0.06 + 0.06 * rng.uniform()) * kSampleRate));
    const bool voiced = rng.uniform() > 0.25;
    const double f0 = 110.0 + 90.0 * rng.uniform();
    Pcm s = voiced ? voiced_syllable(syl, f0, rng) : unvoiced_syllable(syl, rng);
    fade_edges(s.data(), s.size(), kSampleRate / 200);  // 5 ms seams
    std::copy(s.begin(), s.end(), out.begin() + pos);
    pos += syl;
  }
  const double am_rate = 3.0 + rng.uniform();
  const double am_phase = kTwoPi * rng.uniform();
  for (size_t n = 0; n < len; ++n)
    out[n] *= 1.0 + 0.3 * std::sin(kTwoPi * am_rate * n / kSampleRate + am_phase);
  fade_edges(out.data(), out.size(), kSampleRate / 100);  // 10 ms edges
  normalize_rms(out, 1.0);
  return out;
}

constexpr double kSpeechRms = 0.178;  // -15 dBFS
constexpr double kMusicRms = 0.2;     // -14 dBFS

Pcm music_chords(size_t len, Rng& rng) {
  static const double kRoots[] = {196.0, 220.0, 246.94, 261.63, 293.66};
  static const double kRatios[] = {1.0, 1.5, 2.0, 3.0, 4.0};
  static const double kWeights[] = {1.0, 0.7, 0.55, 0.35, 0.2};

  Pcm out(len, 0.0);
  size_t pos = 0;
  int prev_root = -1;
  while (pos < len) {
    const size_t frames = 125 + static_cast<size_t>(75.0 * rng.uniform());
    const size_t dur = std::min(len - pos, frames * kFrameLen);
    int root_idx = static_cast<int>(rng.uniform() * 5.0) % 5;
    if (root_idx == prev_root) root_idx = (root_idx + 1) % 5;
    prev_root = root_idx;

    double phases[5], shimmer_phases[5];
    for (int i = 0; i < 5; ++i) {
      phases[i] = kTwoPi * rng.uniform();
      shimmer_phases[i] = kTwoPi * rng.uniform();
    }
    const double shimmer_rate = 0.3 + 0.3 * rng.uniform();

    for (size_t n = 0; n < dur; ++n) {
      const double ts = static_cast<double>(n) / kSampleRate;
      double v = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double f = kRoots[root_idx] * kRatios[i];
        const double shimmer =
            1.0 + 0.115 * std::sin(kTwoPi * shimmer_rate * ts + shimmer_phases[i]);
        v += kWeights[i] * shimmer * std::sin(kTwoPi * f * ts + phases[i]);
      }
      out[pos + n] = v;
    }
    fade_edges(out.data() + pos, dur, kSampleRate / 50);  // 20 ms chord seams
    pos += dur;
  }
  normalize_rms(out, 1.0);
  return out;
}

}  // namespace

GeneratedSignal generate_silence(double seconds) {
  GeneratedSignal sig;
  const size_t frames = frames_for(seconds);
  sig.pcm.assign(frames * kFrameLen, 0.0);
  sig.labels.assign(frames, SegmentClass::kNoiseOnly);
  return sig;
}

GeneratedSignal generate_speech_like(double seconds, uint64_t seed) {
  Rng rng(seed);
  const size_t total_frames = frames_for(seconds);
  GeneratedSignal sig;
  sig.pcm.assign(total_frames * kFrameLen, 0.0);
  sig.labels.assign(total_frames, SegmentClass::kNoiseOnly);

  // Bursts alternate with pauses; the pause after the first burst and every
  // other one after that is long, the rest are conversational micro-pauses.
  size_t frame = 0;
  bool long_pause = true;
  while (frame < total_frames) {
    const size_t burst_frames =
        std::min(total_frames - frame,
                 static_cast<size_t>(30 + 21.0 * rng.uniform()));
    Pcm burst = speech_burst(burst_frames * kFrameLen, rng);
    for (size_t n = 0; n < burst.size(); ++n)
      sig.pcm[frame * kFrameLen + n] = kSpeechRms * burst[n];
    for (size_t f = 0; f < burst_frames; ++f)
      sig.labels[frame + f] = SegmentClass::kSpeechActive;
    frame += burst_frames;

    const size_t pause_frames =
        long_pause ? 45 + static_cast<size_t>(30.0 * rng.uniform())
                   : 10 + static_cast<size_t>(10.0 * rng.uniform());
    frame += std::min(total_frames - frame, pause_frames);
    long_pause = !long_pause;
  }
  return sig;
}

GeneratedSignal generate_music_like(double seconds, uint64_t seed) {
  Rng rng(seed);
  const size_t total_frames = frames_for(seconds);
  GeneratedSignal sig;
  sig.pcm = music_chords(total_frames * kFrameLen, rng);
  for (double& v : sig.pcm) v *= kMusicRms;
  sig.labels.assign(total_frames, SegmentClass::kMusic);
  return sig;
}

GeneratedSignal generate_mixed(double seconds, uint64_t seed) {
  Rng rng(seed);
  const size_t total_frames = frames_for(seconds);
  GeneratedSignal sig;
  sig.pcm.assign(total_frames * kFrameLen, 0.0);
  sig.labels.assign(total_frames, SegmentClass::kNoiseOnly);

  // speech 2.5 s, gap 0.6 s, music 4 s, gap 0.6 s, repeating. Music
  // segments are long enough for the mode classifier to settle well before
  // the segment ends.
  const size_t pattern[] = {125, 30, 200, 30};
  size_t frame = 0;
  int seg = 0;
  while (frame < total_frames) {
    const size_t seg_frames = std::min(total_frames - frame, pattern[seg % 4]);
    const size_t base = frame * kFrameLen;
    if (seg % 4 == 0) {
      Pcm burst = speech_burst(seg_frames * kFrameLen, rng);
      for (size_t n = 0; n < burst.size(); ++n)
        sig.pcm[base + n] = kSpeechRms * burst[n];
      std::fill_n(sig.labels.begin() + frame, seg_frames,
                  SegmentClass::kSpeechActive);
    } else if (seg % 4 == 2) {
      Pcm chords = music_chords(seg_frames * kFrameLen, rng);
      for (size_t n = 0; n < chords.size(); ++n)
        sig.pcm[base + n] = kMusicRms * chords[n];
      std::fill_n(sig.labels.begin() + frame, seg_frames, SegmentClass::kMusic);
    }
    frame += seg_frames;
    ++seg;
  }
  return sig;
}

GeneratedSignal generate(const std::string& kind, double seconds, uint64_t seed) {
  if (kind == "silence") return generate_silence(seconds);
  if (kind == "speech_like") return generate_speech_like(seconds, seed);
  if (kind == "music_like") return generate_music_like(seconds, seed);
  if (kind == "mixed") return generate_mixed(seconds, seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown signal kind: " + kind);
}

namespace {

constexpr double kNoiseRms = 0.1;  // -20 dBFS

// Smooth on/off envelope: raised-cosine ramps, values in [0, 1].
Pcm burst_envelope(size_t n, Rng& rng, double on_min_s, double on_max_s,
                   double off_min_s, double off_max_s, double ramp_s) {
  Pcm env(n, 0.0);
  const size_t ramp = static_cast<size_t>(ramp_s * kSampleRate);
  size_t pos = 0;
  bool on = rng.uniform() < 0.5;
  while (pos < n) {
    const double dur_s = on ? on_min_s + (on_max_s - on_min_s) * rng.uniform()
                            : off_min_s + (off_max_s - off_min_s) * rng.uniform();
    const size_t dur = std::max<size_t>(1, static_cast<size_t>(dur_s * kSampleRate));
    if (on) {
      for (size_t i = 0; i < dur && pos + i < n; ++i) {
        double g = 1.0;
        if (i < ramp) g = 0.5 - 0.5 * std::cos(kTwoPi / 2.0 * i / ramp);
        else if (dur - i < ramp) g = 0.5 - 0.5 * std::cos(kTwoPi / 2.0 * (dur - i) / ramp);
        env[pos + i] = g;
      }
    }
    pos += dur;
    on = !on;
  }
  return env;
}

Pcm white_base(size_t n, Rng& rng) {
  Pcm x(n);
  for (double& v : x) v = rng.gaussian();
  return x;
}

}  // namespace

Pcm generate_noise(const std::string& type, std::size_t samples, uint64_t seed) {
  Rng rng(seed);
  Pcm x = white_base(samples, rng);

  if (type == "white") {
    // flat
  } else if (type == "pink") {
    // Paul Kellet's economy pink filter.
    double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
    for (double& v : x) {
      const double w = v;
      b0 = 0.99886 * b0 + w * 0.0555179;
      b1 = 0.99332 * b1 + w * 0.0750759;
      b2 = 0.96900 * b2 + w * 0.1538520;
      b3 = 0.86650 * b3 + w * 0.3104856;
      b4 = 0.55000 * b4 + w * 0.5329522;
      b5 = -0.7616 * b5 - w * 0.0168980;
      v = b0 + b1 + b2 + b3 + b4 + b5 + b6 + w * 0.5362;
      b6 = w * 0.115926;
    }
  } else if (type == "car_like") {
    one_pole_lowpass(x, 400.0, 2);
  } else if (type == "train_like") {
    one_pole_lowpass(x, 1200.0, 2);
    const Pcm env = burst_envelope(samples, rng, 0.3, 0.8, 0.25, 0.6, 0.08);
    // base + bursts: about 3 dB of power swing, below the usual activity
    // margin so the bursts read as noise, not speech
    for (size_t n = 0; n < samples; ++n) x[n] *= 0.70 + 0.30 * env[n];
  } else if (type == "cafeteria_like") {
    one_pole_lowpass(x, 3000.0, 1);
    one_pole_highpass(x, 200.0);
    const Pcm e1 = burst_envelope(samples, rng, 0.2, 0.7, 0.2, 0.8, 0.06);
    const Pcm e2 = burst_envelope(samples, rng, 0.2, 0.7, 0.2, 0.8, 0.06);
    const Pcm e3 = burst_envelope(samples, rng, 0.3, 0.9, 0.3, 0.9, 0.06);
    for (size_t n = 0; n < samples; ++n)
      x[n] *= 0.60 + 0.11 * (e1[n] + e2[n] + e3[n]);
  } else if (type == "wind_like") {
    one_pole_lowpass(x, 250.0, 2);
    const double f1 = 1.0 + 0.8 * rng.uniform();
    const double f2 = 2.5 + 1.5 * rng.uniform();
    const double p1 = kTwoPi * rng.uniform();
    const double p2 = kTwoPi * rng.uniform();
    for (size_t n = 0; n < samples; ++n) {
      const double ts = static_cast<double>(n) / kSampleRate;
      const double g = std::clamp(0.5 + 0.35 * std::sin(kTwoPi * f1 * ts + p1) +
                                      0.15 * std::sin(kTwoPi * f2 * ts + p2),
                                  0.0, 1.0);
      x[n] *= 0.70 + 0.30 * g * g;
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown noise type: " + type);
  }

  normalize_rms(x, kNoiseRms);
  return x;
}

const std::vector<std::string>& noise_types() {
  static const std::vector<std::string> kTypes = {
      "white", "pink", "car_like", "train_like", "cafeteria_like", "wind_like"};
  return kTypes;
}

}  // namespace gve
