// tools/gve_main.cpp

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

// Command line front end for the voice pipeline: signal generation,
// encoding, decoding, enhancement and guided-versus-unguided comparison.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gve/pipeline.hpp"
#include "gve/sidecar_io.hpp"
#include "gve/wav_io.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  command line usage error\n"
    "  2  file I/O error\n"
    "  3  malformed file or config\n"
    "  4  state sidecar misaligned with the audio\n"
    "  5  invalid argument or empty measurement\n";

int exit_code_for(gve::ErrorCode code) {
  switch (code) {
    case gve::ErrorCode::kIo:
      return 2;
    case gve::ErrorCode::kFormat:
    case gve::ErrorCode::kBadMagic:
    case gve::ErrorCode::kTruncatedStream:
    case gve::ErrorCode::kReservedBitSet:
    case gve::ErrorCode::kInvalidRateCode:
    case gve::ErrorCode::kPayloadMismatch:
      return 3;
    case gve::ErrorCode::kStateMisalignment:
      return 4;
    case gve::ErrorCode::kInvalidArgument:
    case gve::ErrorCode::kNoNoiseFrames:
    case gve::ErrorCode::kNoMusicFrames:
      return 5;
  }
  return 5;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct ModuleSelection {
  bool nr = true;
  bool mdrp = false;
};

ModuleSelection parse_modules(const std::string& csv) {
  ModuleSelection sel;
  sel.nr = false;
  for (const std::string& m : split_list(csv)) {
    if (m == "nr") sel.nr = true;
    else if (m == "mdrp") sel.mdrp = true;
    else
      throw gve::Error(gve::ErrorCode::kInvalidArgument,
                       "unknown module '" + m + "' (expected nr, mdrp)");
  }
  if (!sel.nr && !sel.mdrp)
    throw gve::Error(gve::ErrorCode::kInvalidArgument,
                     "at least one module must be enabled");
  return sel;
}

gve::PipelineConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return {};
  return gve::load_pipeline_config(path);
}

int run_gen(const std::string& kind, double seconds, uint64_t seed,
            const std::string& out_path, const std::string& labels_path) {
  const gve::GeneratedSignal sig = gve::generate(kind, seconds, seed);
  gve::write_wav(out_path, sig.pcm);
  if (!labels_path.empty()) gve::write_labels_csv(labels_path, sig.labels);
  std::cout << "wrote " << out_path << " (" << sig.labels.size() << " frames, "
            << kind << ")\n";
  return 0;
}

int run_encode(const std::string& in_path, const std::string& out_path,
               bool no_dtx, const std::string& config_path) {
  gve::PipelineConfig cfg = load_config_or_default(config_path);
  if (no_dtx) cfg.analyzer.dtx = false;
  const gve::Pcm pcm = gve::read_wav(in_path);
  const std::vector<gve::FrameRecord> frames = gve::encode(pcm, cfg.analyzer);
  gve::write_stream_file(out_path, frames);

  size_t speech = 0, sid = 0, nodata = 0;
  for (const gve::FrameRecord& f : frames) {
    switch (f.toc.category()) {
      case gve::FrameCategory::kSpeech: ++speech; break;
      case gve::FrameCategory::kSid: ++sid; break;
      default: ++nodata; break;
    }
  }
  std::cout << "wrote " << out_path << ": " << frames.size() << " frames ("
            << speech << " speech, " << sid << " sid, " << nodata
            << " no_data)\n";
  return 0;
}

int run_decode(const std::string& in_path, const std::string& out_path,
               const std::string& states_path, std::optional<uint64_t> seed,
               const std::string& config_path) {
  gve::PipelineConfig cfg = load_config_or_default(config_path);
  if (seed) cfg.decoder.cng_seed = *seed;
  const std::vector<gve::FrameRecord> frames = gve::read_stream_file(in_path).second;
  auto [pcm, states] = gve::decode(frames, cfg.decoder);
  gve::write_wav(out_path, pcm);
  if (!states_path.empty()) gve::write_states_csv(states_path, states);
  std::cout << "wrote " << out_path << " (" << states.size() << " frames)\n";
  return 0;
}

int run_enhance(const std::string& in_path, const std::string& out_path,
                const std::string& mode, const std::string& states_path,
                const std::string& modules_csv, const std::string& nr_trace_path,
                const std::string& mdrp_trace_path,
                const std::string& config_path) {
  const gve::PipelineConfig cfg = load_config_or_default(config_path);
  const ModuleSelection modules = parse_modules(modules_csv);

  gve::Pcm decoded;
  std::vector<gve::DecoderState> states;
  bool have_states = false;

  if (ends_with(in_path, ".gvf")) {
    const std::vector<gve::FrameRecord> frames =
        gve::read_stream_file(in_path).second;
    auto decoded_pair = gve::decode(frames, cfg.decoder);
    decoded = std::move(decoded_pair.first);
    states = std::move(decoded_pair.second);
    // Match the two-step flow (decode to wav, then enhance the wav).
    gve::quantize_in_place(decoded);
    have_states = true;
  } else {
    decoded = gve::read_wav(in_path);
  }

  if (!states_path.empty()) {
    states = gve::read_states_csv(states_path);
    have_states = true;
  }

  const bool guided = mode == "guided";
  if (guided && !have_states)
    throw gve::Error(gve::ErrorCode::kInvalidArgument,
                     "guided mode needs --states or a .gvf input");

  gve::EnhanceOptions options;
  options.guided = guided;
  options.use_nr = modules.nr;
  options.use_mdrp = modules.mdrp;
  const gve::EnhanceResult result =
      gve::enhance(decoded, guided ? &states : nullptr, options, cfg);

  gve::write_wav(out_path, result.pcm);
  if (!nr_trace_path.empty()) gve::write_nr_trace_csv(nr_trace_path, result.nr_trace);
  if (!mdrp_trace_path.empty())
    gve::write_mdrp_trace_csv(mdrp_trace_path, result.mdrp_trace);
  std::cout << "wrote " << out_path << " (" << mode << ", modules "
            << modules_csv << ")\n";
  return 0;
}

int run_compare(const std::string& speech_path, const std::string& labels_path,
                const std::string& gen_kind, double gen_seconds,
                const std::string& noises_csv, double snr_db, uint64_t seed,
                const std::string& report_path, const std::string& dump_dir,
                const std::string& modules_csv, const std::string& config_path) {
  const gve::PipelineConfig cfg = load_config_or_default(config_path);
  const ModuleSelection modules = parse_modules(modules_csv);

  gve::GeneratedSignal clean;
  if (!speech_path.empty()) {
    if (labels_path.empty())
      throw gve::Error(gve::ErrorCode::kInvalidArgument,
                       "--speech needs --labels with the ground truth");
    clean.pcm = gve::read_wav(speech_path);
    clean.labels = gve::read_labels_csv(labels_path);
  } else {
    clean = gve::generate(gen_kind, gen_seconds, seed);
  }

  const std::vector<std::string> noises =
      noises_csv.empty() ? gve::noise_types() : split_list(noises_csv);

  const gve::ComparisonReport report = gve::run_comparison(
      clean, noises, snr_db, seed, cfg, modules.mdrp, dump_dir);
  if (!report_path.empty()) gve::write_report_csv(report_path, report);

  std::printf("%-16s %12s %12s %12s %10s %10s\n", "noise", "unguided_db",
              "guided_db", "improve_db", "det_ung", "det_gui");
  for (const gve::ConditionResult& c : report.conditions) {
    std::printf("%-16s %12.2f %12.2f %12.2f %10.2f %10.2f\n",
                c.noise_type.c_str(), c.suppression_unguided_db,
                c.suppression_guided_db, c.improvement_db,
                c.detection_rate_unguided, c.detection_rate_guided);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gve: voice pipeline simulator with decoder-guided enhancement"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate labeled test material");
  std::string gen_kind = "mixed";
  double gen_seconds = 10.0;
  uint64_t gen_seed = 1;
  std::string gen_out, gen_labels;
  gen->add_option("--kind", gen_kind, "silence|speech_like|music_like|mixed")
      ->capture_default_str();
  gen->add_option("--seconds", gen_seconds, "Duration")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output wav")->required();
  gen->add_option("--labels", gen_labels, "Ground-truth labels CSV");

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a wav into a frame stream");
  std::string enc_in, enc_out, enc_config;
  bool enc_no_dtx = false;
  enc->add_option("--in", enc_in, "Input wav (16 kHz mono)")->required();
  enc->add_option("--out", enc_out, "Output .gvf stream")->required();
  enc->add_flag("--no-dtx", enc_no_dtx, "Emit every frame as SPEECH");
  enc->add_option("--config", enc_config, "Pipeline config file");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a frame stream to wav");
  std::string dec_in, dec_out, dec_states, dec_config;
  std::optional<uint64_t> dec_seed;
  dec->add_option("--in", dec_in, "Input .gvf stream")->required();
  dec->add_option("--out", dec_out, "Output wav")->required();
  dec->add_option("--states", dec_states, "Per-frame decoder state CSV");
  dec->add_option("--seed", dec_seed, "Comfort noise seed override");
  dec->add_option("--config", dec_config, "Pipeline config file");

  // enhance
  auto* enh = app.add_subcommand("enhance", "Run the enhancement chain");
  std::string enh_in, enh_out, enh_mode = "guided", enh_states;
  std::string enh_modules = "nr", enh_nr_trace, enh_mdrp_trace, enh_config;
  enh->add_option("--in", enh_in, "Input wav or .gvf (a .gvf is decoded first)")
      ->required();
  enh->add_option("--out", enh_out, "Output wav")->required();
  enh->add_option("--mode", enh_mode, "guided|unguided")
      ->check(CLI::IsMember({"guided", "unguided"}))
      ->capture_default_str();
  enh->add_option("--states", enh_states, "Decoder state CSV (guided mode)");
  enh->add_option("--modules", enh_modules, "Comma list of nr, mdrp")
      ->capture_default_str();
  enh->add_option("--nr-trace", enh_nr_trace, "Noise reduction trace CSV");
  enh->add_option("--mdrp-trace", enh_mdrp_trace, "Dynamics trace CSV");
  enh->add_option("--config", enh_config, "Pipeline config file");

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "Score guided vs unguided enhancement over a noise bank");
  std::string cmp_speech, cmp_labels, cmp_gen = "mixed", cmp_noises;
  std::string cmp_report, cmp_dump, cmp_modules = "nr", cmp_config;
  double cmp_seconds = 20.0, cmp_snr = 10.0;
  uint64_t cmp_seed = 1;
  cmp->add_option("--speech", cmp_speech, "Clean input wav (else generated)");
  cmp->add_option("--labels", cmp_labels, "Ground-truth labels for --speech");
  cmp->add_option("--gen", cmp_gen, "Generator kind when no --speech")
      ->capture_default_str();
  cmp->add_option("--seconds", cmp_seconds, "Generated duration")
      ->capture_default_str();
  cmp->add_option("--noises", cmp_noises,
                  "Comma list of backdrops (default: whole bank)");
  cmp->add_option("--snr", cmp_snr, "Mixing SNR in dB")->capture_default_str();
  cmp->add_option("--seed", cmp_seed, "Seed for generation and mixing")
      ->capture_default_str();
  cmp->add_option("--report", cmp_report, "Report CSV path");
  cmp->add_option("--dump-dir", cmp_dump, "Directory for per-condition dumps");
  cmp->add_option("--modules", cmp_modules, "Comma list of nr, mdrp")
      ->capture_default_str();
  cmp->add_option("--config", cmp_config, "Pipeline config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_kind, gen_seconds, gen_seed, gen_out, gen_labels);
    if (enc->parsed()) return run_encode(enc_in, enc_out, enc_no_dtx, enc_config);
    if (dec->parsed())
      return run_decode(dec_in, dec_out, dec_states, dec_seed, dec_config);
    if (enh->parsed())
      return run_enhance(enh_in, enh_out, enh_mode, enh_states, enh_modules,
                         enh_nr_trace, enh_mdrp_trace, enh_config);
    if (cmp->parsed())
      return run_compare(cmp_speech, cmp_labels, cmp_gen, cmp_seconds,
                         cmp_noises, cmp_snr, cmp_seed, cmp_report, cmp_dump,
                         cmp_modules, cmp_config);
  } catch (const gve::Error& e) {
    std::cerr << "gve: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gve: internal error: " << e.what() << "\n";
    return 70;
  }
  return 1;
}
