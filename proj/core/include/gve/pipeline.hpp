// gve/pipeline.hpp

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

#ifndef GVE_PIPELINE_HPP_
#define GVE_PIPELINE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "gve/decoder.hpp"
#include "gve/encoder.hpp"
#include "gve/guidance.hpp"
#include "gve/mdrp.hpp"
#include "gve/metrics.hpp"
#include "gve/noise_reduction.hpp"
#include "gve/signalgen.hpp"
#include "gve/types.hpp"

// End-to-end wiring: one config bundle for every stage, the enhancement
// chain (noise reduction, then dynamic range processing), and the
// guided-versus-unguided comparison harness.

namespace gve {

struct PipelineConfig {
  AnalyzerConfig analyzer;
  DecoderConfig decoder;
  ControllerConfig controller;
  NrConfig nr;
  MdrpConfig mdrp;
};

// key = value per line, '#' comments, blank lines ignored. Unknown keys are
// format errors so a typo cannot silently run with defaults. See the README
// for the key list.
PipelineConfig parse_pipeline_config(std::istream& in);
PipelineConfig load_pipeline_config(const std::string& path);

struct EnhanceOptions {
  bool guided = true;
  bool use_nr = true;
  bool use_mdrp = false;
};

struct EnhanceResult {
  Pcm pcm;
  std::vector<NrTraceRow> nr_trace;
  std::vector<MdrpTraceRow> mdrp_trace;
};

// Runs the enabled enhancement stages over decoded audio. Guided mode needs
// one decoder state per frame; both stages consume the same directive
// sequence.
EnhanceResult enhance(const Pcm& decoded, const std::vector<DecoderState>* states,
                      const EnhanceOptions& options, const PipelineConfig& cfg);

// Mixes the clean signal with each backdrop at the given SNR (measured
// against the labeled-active portion of the clean signal), sends the mix
// through encode -> decode, enhances it once guided and once unguided, and
// scores both. Audio is quantized to int16 at every stage boundary so the
// result matches what a chain of the CLI tools would produce. If dump_dir is
// non-empty, per-condition audio and traces land there.
ComparisonReport run_comparison(const GeneratedSignal& clean,
                                const std::vector<std::string>& noise_names,
                                double snr_db, uint64_t seed,
                                const PipelineConfig& cfg,
                                bool with_mdrp = false,
                                const std::string& dump_dir = "");

}  // namespace gve

#endif  // GVE_PIPELINE_HPP_
