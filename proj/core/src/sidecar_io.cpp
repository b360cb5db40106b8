// core/src/sidecar_io.cpp

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

#include "gve/sidecar_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gve/guidance.hpp"

namespace gve {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

void expect_header(std::istream& in, const std::string& expected,
                   const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != expected)
    throw Error(ErrorCode::kFormat,
                path + ": expected header '" + expected + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

SegmentClass parse_segment_class(const std::string& s, const std::string& path) {
  if (s == "noise") return SegmentClass::kNoiseOnly;
  if (s == "speech") return SegmentClass::kSpeechActive;
  if (s == "music") return SegmentClass::kMusic;
  throw Error(ErrorCode::kFormat, path + ": unknown segment class '" + s + "'");
}

FrameCategory parse_frame_category(const std::string& s, const std::string& path) {
  if (s == "SPEECH") return FrameCategory::kSpeech;
  if (s == "SID") return FrameCategory::kSid;
  if (s == "NO_DATA") return FrameCategory::kNoData;
  if (s == "SPEECH_LOST") return FrameCategory::kSpeechLost;
  throw Error(ErrorCode::kFormat, path + ": unknown frame type '" + s + "'");
}

CodingMode parse_coding_mode(const std::string& s, const std::string& path) {
  if (s == "VOICE") return CodingMode::kVoice;
  if (s == "MUSIC") return CodingMode::kMusic;
  throw Error(ErrorCode::kFormat, path + ": unknown coding mode '" + s + "'");
}

}  // namespace

void write_labels_csv(const std::string& path,
                      const std::vector<SegmentClass>& labels) {
  std::ofstream out = open_out(path);
  out << "frame,class\n";
  for (size_t f = 0; f < labels.size(); ++f)
    out << f << ',' << to_string(labels[f]) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

std::vector<SegmentClass> read_labels_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(in, "frame,class", path);
  std::vector<SegmentClass> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 2)
      throw Error(ErrorCode::kFormat, path + ": bad label row '" + line + "'");
    if (std::stoul(fields[0]) != labels.size())
      throw Error(ErrorCode::kFormat, path + ": frame indices not contiguous");
    labels.push_back(parse_segment_class(fields[1], path));
  }
  return labels;
}

void write_states_csv(const std::string& path,
                      const std::vector<DecoderState>& states) {
  std::ofstream out = open_out(path);
  out << "frame,frame_type,coding_mode,vad_active,pitch_lag";
  for (int b = 0; b < kNumSidBands; ++b) out << ",env_" << b;
  for (int i = 0; i < kLpcOrder; ++i) out << ",lpc_" << i;
  out << '\n';
  for (size_t f = 0; f < states.size(); ++f) {
    const DecoderState& st = states[f];
    out << f << ',' << to_string(st.frame_type) << ','
        << to_string(st.coding_mode) << ',' << (st.vad_active ? 1 : 0) << ','
        << st.pitch_lag;
    for (int b = 0; b < kNumSidBands; ++b)
      out << ',' << fmt(st.cng_envelope.energies_db[b]);
    for (int i = 0; i < kLpcOrder; ++i) out << ',' << fmt(st.lpc[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

std::vector<DecoderState> read_states_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::ostringstream header;
  header << "frame,frame_type,coding_mode,vad_active,pitch_lag";
  for (int b = 0; b < kNumSidBands; ++b) header << ",env_" << b;
  for (int i = 0; i < kLpcOrder; ++i) header << ",lpc_" << i;
  expect_header(in, header.str(), path);

  std::vector<DecoderState> states;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 5 + kNumSidBands + kLpcOrder)
      throw Error(ErrorCode::kFormat, path + ": bad state row '" + line + "'");
    if (std::stoul(fields[0]) != states.size())
      throw Error(ErrorCode::kFormat, path + ": frame indices not contiguous");
    DecoderState st;
    st.frame_type = parse_frame_category(fields[1], path);
    st.coding_mode = parse_coding_mode(fields[2], path);
    st.vad_active = fields[3] == "1";
    st.pitch_lag = static_cast<uint16_t>(std::stoul(fields[4]));
    for (int b = 0; b < kNumSidBands; ++b)
      st.cng_envelope.energies_db[b] = std::stod(fields[5 + b]);
    for (int i = 0; i < kLpcOrder; ++i)
      st.lpc[i] = std::stof(fields[5 + kNumSidBands + i]);
    states.push_back(st);
  }
  return states;
}

void write_nr_trace_csv(const std::string& path,
                        const std::vector<NrTraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "hop,time_s,provenance,policy,mean_gain_db,mean_noise_db,residual_db,"
         "detected_inactive\n";
  for (const NrTraceRow& row : trace) {
    out << row.hop << ',' << fmt(row.time_s) << ',' << to_string(row.provenance)
        << ',' << to_string(row.policy) << ',' << fmt(row.mean_gain_db) << ','
        << fmt(row.mean_noise_db) << ',' << fmt(row.residual_db) << ','
        << (row.detected_inactive ? 1 : 0) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

void write_mdrp_trace_csv(const std::string& path,
                          const std::vector<MdrpTraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "hop,band,level_db,target_gain_db,applied_gain_db,curve,"
         "detected_inactive\n";
  for (const MdrpTraceRow& row : trace) {
    out << row.hop << ',' << row.band << ',' << fmt(row.level_db) << ','
        << fmt(row.target_gain_db) << ',' << fmt(row.applied_gain_db) << ','
        << to_string(row.curve) << ',' << (row.detected_inactive ? 1 : 0)
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

void write_residual_csv(const std::string& path,
                        const std::vector<double>& trace_db) {
  std::ofstream out = open_out(path);
  out << "hop,time_s,level_db\n";
  for (size_t h = 0; h < trace_db.size(); ++h) {
    out << h << ',' << fmt(static_cast<double>(h) * kHopLen / kSampleRate)
        << ',' << fmt(trace_db[h]) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

void write_report_csv(const std::string& path, const ComparisonReport& report) {
  std::ofstream out = open_out(path);
  out << "noise_type,snr_db,suppression_unguided_db,suppression_guided_db,"
         "improvement_db,detection_rate_unguided,detection_rate_guided,"
         "music_lsd_unguided_db,music_lsd_guided_db\n";
  for (const ConditionResult& c : report.conditions) {
    out << c.noise_type << ',' << fmt(report.snr_db) << ','
        << fmt(c.suppression_unguided_db) << ',' << fmt(c.suppression_guided_db)
        << ',' << fmt(c.improvement_db) << ',' << fmt(c.detection_rate_unguided)
        << ',' << fmt(c.detection_rate_guided) << ','
        << fmt(c.music_lsd_unguided_db) << ',' << fmt(c.music_lsd_guided_db)
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

}  // namespace gve
