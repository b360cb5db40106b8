// gve/sidecar_io.hpp

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

#ifndef GVE_SIDECAR_IO_HPP_
#define GVE_SIDECAR_IO_HPP_

#include <string>
#include <vector>

#include "gve/decoder.hpp"
#include "gve/mdrp.hpp"
#include "gve/metrics.hpp"
#include "gve/noise_reduction.hpp"
#include "gve/types.hpp"

// CSV sidecar files: ground-truth labels, per-frame decoder state, per-hop
// processor traces and comparison reports. Headers are fixed; readers
// validate them so stale files fail loudly instead of misparsing.

namespace gve {

void write_labels_csv(const std::string& path,
                      const std::vector<SegmentClass>& labels);
std::vector<SegmentClass> read_labels_csv(const std::string& path);

void write_states_csv(const std::string& path,
                      const std::vector<DecoderState>& states);
std::vector<DecoderState> read_states_csv(const std::string& path);

void write_nr_trace_csv(const std::string& path,
                        const std::vector<NrTraceRow>& trace);

void write_mdrp_trace_csv(const std::string& path,
                          const std::vector<MdrpTraceRow>& trace);

void write_residual_csv(const std::string& path,
                        const std::vector<double>& trace_db);

void write_report_csv(const std::string& path, const ComparisonReport& report);

}  // namespace gve

#endif  // GVE_SIDECAR_IO_HPP_
