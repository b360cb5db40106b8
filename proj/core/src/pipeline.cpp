// core/src/pipeline.cpp

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

#include "gve/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "gve/sidecar_io.hpp"
#include "gve/wav_io.hpp"

namespace gve {

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw Error(ErrorCode::kFormat, "config: bad boolean for " + key + ": " + v);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kFormat, "config: bad number for " + key + ": " + v);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw Error(ErrorCode::kFormat, "config: bad integer for " + key + ": " + v);
  return i;
}

NrPolicy parse_policy(const std::string& v, const std::string& key) {
  if (v == "bypass") return NrPolicy::kBypass;
  if (v == "soft") return NrPolicy::kSoft;
  if (v == "aggressive") return NrPolicy::kAggressive;
  throw Error(ErrorCode::kFormat, "config: bad policy for " + key + ": " + v);
}

// Curve syntax: whitespace-separated level:gain pairs, e.g.
//   mdrp_speech_curve_0 = -80:9 -50:9 -20:0 0:-10
DrcCurve parse_curve(const std::string& v, const std::string& key) {
  std::vector<CurveKnot> knots;
  std::istringstream ss(v);
  std::string pair;
  while (ss >> pair) {
    const size_t colon = pair.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::kFormat,
                  "config: bad curve knot for " + key + ": " + pair);
    CurveKnot knot;
    knot.level_db = parse_double(pair.substr(0, colon), key);
    knot.gain_db = parse_double(pair.substr(colon + 1), key);
    knots.push_back(knot);
  }
  if (knots.empty())
    throw Error(ErrorCode::kFormat, "config: empty curve for " + key);
  try {
    return DrcCurve(knots);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, "config: " + key + ": " + e.what());
  }
}

void apply_key(PipelineConfig& cfg, const std::string& key,
               const std::string& value) {
  // analyzer
  if (key == "vad_margin_db") cfg.analyzer.vad_margin_db = parse_double(value, key);
  else if (key == "vad_gate_dbfs") cfg.analyzer.vad_gate_dbfs = parse_double(value, key);
  else if (key == "vad_hangover_frames") cfg.analyzer.vad_hangover_frames = parse_int(value, key);
  else if (key == "vad_history_frames") cfg.analyzer.vad_history_frames = parse_int(value, key);
  else if (key == "flux_music_threshold") cfg.analyzer.flux_music_threshold = parse_double(value, key);
  else if (key == "classifier_window_hops") cfg.analyzer.classifier_window_hops = parse_int(value, key);
  else if (key == "classifier_hysteresis_hops") cfg.analyzer.classifier_hysteresis_hops = parse_int(value, key);
  else if (key == "sid_interval_frames") cfg.analyzer.sid_interval_frames = parse_int(value, key);
  else if (key == "sid_smoothing_alpha") cfg.analyzer.sid_smoothing_alpha = parse_double(value, key);
  else if (key == "dtx") cfg.analyzer.dtx = parse_bool(value, key);
  // decoder
  else if (key == "env_hold_alpha") cfg.decoder.env_hold_alpha = parse_double(value, key);
  else if (key == "lost_attenuation_db") cfg.decoder.lost_attenuation_db = parse_double(value, key);
  else if (key == "cng_seed") cfg.decoder.cng_seed = static_cast<uint64_t>(parse_double(value, key));
  // controller
  else if (key == "music_policy") cfg.controller.music_policy = parse_policy(value, key);
  else if (key == "freeze_variant") cfg.controller.freeze_variant = parse_bool(value, key);
  else if (key == "crossfade_hops") cfg.controller.crossfade_hops = parse_int(value, key);
  // noise reduction
  else if (key == "nr_alpha_smooth") cfg.nr.alpha_smooth = parse_double(value, key);
  else if (key == "nr_bias") cfg.nr.bias = parse_double(value, key);
  else if (key == "nr_subwindow_count") cfg.nr.subwindow_count = parse_int(value, key);
  else if (key == "nr_subwindow_hops") cfg.nr.subwindow_hops = parse_int(value, key);
  else if (key == "nr_beta_aggressive") cfg.nr.beta_aggressive = parse_double(value, key);
  else if (key == "nr_beta_soft") cfg.nr.beta_soft = parse_double(value, key);
  else if (key == "nr_floor_aggressive_db") cfg.nr.floor_aggressive_db = parse_double(value, key);
  else if (key == "nr_floor_soft_db") cfg.nr.floor_soft_db = parse_double(value, key);
  // mdrp
  else if (key == "mdrp_attack_alpha") cfg.mdrp.attack_alpha = parse_double(value, key);
  else if (key == "mdrp_release_alpha") cfg.mdrp.release_alpha = parse_double(value, key);
  else if (key == "mdrp_speech_curve_0") cfg.mdrp.speech_curves[0] = parse_curve(value, key);
  else if (key == "mdrp_speech_curve_1") cfg.mdrp.speech_curves[1] = parse_curve(value, key);
  else if (key == "mdrp_speech_curve_2") cfg.mdrp.speech_curves[2] = parse_curve(value, key);
  else if (key == "mdrp_silence_curve_0") cfg.mdrp.silence_curves[0] = parse_curve(value, key);
  else if (key == "mdrp_silence_curve_1") cfg.mdrp.silence_curves[1] = parse_curve(value, key);
  else if (key == "mdrp_silence_curve_2") cfg.mdrp.silence_curves[2] = parse_curve(value, key);
  else
    throw Error(ErrorCode::kFormat, "config: unknown key: " + key);
}

}  // namespace

PipelineConfig parse_pipeline_config(std::istream& in) {
  PipelineConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kFormat,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    apply_key(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
  return parse_pipeline_config(in);
}

EnhanceResult enhance(const Pcm& decoded, const std::vector<DecoderState>* states,
                      const EnhanceOptions& options, const PipelineConfig& cfg) {
  std::vector<EnhancementDirective> directives;
  if (options.guided) {
    if (!states)
      throw Error(ErrorCode::kInvalidArgument,
                  "guided enhancement needs decoder states");
    directives = plan_directives(*states, cfg.controller);
  }

  EnhanceResult result;
  Pcm current = decoded;
  if (options.use_nr) {
    NrProcessor nr(cfg.nr);
    NrResult r = options.guided ? nr.run(current, directives) : nr.run(current);
    current = std::move(r.pcm);
    result.nr_trace = std::move(r.trace);
  }
  if (options.use_mdrp) {
    MdrpProcessor mdrp(cfg.mdrp);
    MdrpResult r =
        options.guided ? mdrp.run(current, directives) : mdrp.run(current);
    current = std::move(r.pcm);
    result.mdrp_trace = std::move(r.trace);
  }
  result.pcm = std::move(current);
  return result;
}

ComparisonReport run_comparison(const GeneratedSignal& clean,
                                const std::vector<std::string>& noise_names,
                                double snr_db, uint64_t seed,
                                const PipelineConfig& cfg, bool with_mdrp,
                                const std::string& dump_dir) {
  if (clean.pcm.size() != clean.labels.size() * kFrameLen)
    throw Error(ErrorCode::kInvalidArgument,
                "clean signal is not frame-aligned with its labels");

  double signal_ms = 0.0;
  size_t active_frames = 0;
  for (size_t f = 0; f < clean.labels.size(); ++f) {
    if (clean.labels[f] == SegmentClass::kNoiseOnly) continue;
    signal_ms += mean_square(clean.pcm.data() + f * kFrameLen, kFrameLen);
    ++active_frames;
  }
  if (active_frames == 0)
    throw Error(ErrorCode::kInvalidArgument,
                "clean signal has no labeled-active content");
  signal_ms /= static_cast<double>(active_frames);

  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    write_labels_csv(dump_dir + "/labels.csv", clean.labels);
  }

  ComparisonReport report;
  report.snr_db = snr_db;
  report.seed = seed;

  for (size_t i = 0; i < noise_names.size(); ++i) {
    const std::string& name = noise_names[i];
    const uint64_t condition_seed = seed ^ ((i + 1) * 0x9e3779b97f4a7c15ULL);
    Pcm noise = generate_noise(name, clean.pcm.size(), condition_seed);
    const double gain =
        std::sqrt(signal_ms / mean_square(noise) * db_to_power(-snr_db));

    Pcm mixed = clean.pcm;
    for (size_t n = 0; n < mixed.size(); ++n) mixed[n] += gain * noise[n];
    quantize_in_place(mixed);

    const std::vector<FrameRecord> frames = encode(mixed, cfg.analyzer);
    auto [decoded, states] = decode(frames, cfg.decoder);
    quantize_in_place(decoded);

    EnhanceOptions unguided_opt{false, true, with_mdrp};
    EnhanceOptions guided_opt{true, true, with_mdrp};
    EnhanceResult unguided = enhance(decoded, nullptr, unguided_opt, cfg);
    EnhanceResult guided = enhance(decoded, &states, guided_opt, cfg);
    quantize_in_place(unguided.pcm);
    quantize_in_place(guided.pcm);

    ConditionResult c;
    c.noise_type = name;
    c.suppression_unguided_db = suppression_db(decoded, unguided.pcm, clean.labels);
    c.suppression_guided_db = suppression_db(decoded, guided.pcm, clean.labels);
    c.improvement_db = c.suppression_guided_db - c.suppression_unguided_db;
    c.detection_rate_unguided = silence_detection_rate(
        detected_inactive_frames(unguided.nr_trace), clean.labels);
    c.detection_rate_guided = silence_detection_rate(
        detected_inactive_frames(guided.nr_trace), clean.labels);

    const std::vector<bool> music_mask =
        hops_with_label(clean.labels, SegmentClass::kMusic);
    const bool has_music =
        std::find(music_mask.begin(), music_mask.end(), true) != music_mask.end();
    if (has_music) {
      c.music_lsd_unguided_db =
          log_spectral_distance_db(clean.pcm, unguided.pcm, &music_mask);
      c.music_lsd_guided_db =
          log_spectral_distance_db(clean.pcm, guided.pcm, &music_mask);
    } else {
      c.music_lsd_unguided_db = std::numeric_limits<double>::quiet_NaN();
      c.music_lsd_guided_db = std::numeric_limits<double>::quiet_NaN();
    }
    report.conditions.push_back(c);

    if (!dump_dir.empty()) {
      const std::string base = dump_dir + "/";
      write_wav(base + "mixed_" + name + ".wav", mixed);
      write_wav(base + "decoded_" + name + ".wav", decoded);
      write_wav(base + "enhanced_unguided_" + name + ".wav", unguided.pcm);
      write_wav(base + "enhanced_guided_" + name + ".wav", guided.pcm);
      write_states_csv(base + "states_" + name + ".csv", states);
      write_nr_trace_csv(base + "nr_trace_unguided_" + name + ".csv",
                         unguided.nr_trace);
      write_nr_trace_csv(base + "nr_trace_guided_" + name + ".csv",
                         guided.nr_trace);
      write_residual_csv(base + "residual_unguided_" + name + ".csv",
                         residual_trace_db(unguided.pcm));
      write_residual_csv(base + "residual_guided_" + name + ".csv",
                         residual_trace_db(guided.pcm));
      if (with_mdrp) {
        write_mdrp_trace_csv(base + "mdrp_trace_unguided_" + name + ".csv",
                             unguided.mdrp_trace);
        write_mdrp_trace_csv(base + "mdrp_trace_guided_" + name + ".csv",
                             guided.mdrp_trace);
      }
    }
  }

  if (!dump_dir.empty()) write_report_csv(dump_dir + "/report.csv", report);
  return report;
}

}  // namespace gve
