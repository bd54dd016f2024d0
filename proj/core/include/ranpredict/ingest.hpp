// Copyright 2026 The ranpredict Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ranpredict {

/// One per-TTI PHY telemetry sample.
///
/// BLER is always a fraction in [0, 1]; percentage inputs are converted at
/// parse time.
struct MetricRecord {
  std::int64_t timestamp_ms = 0;
  int ue_id = 0;
  std::int64_t tti = 0;
  int mcs = 0;
  double snr_db = 0.0;
  double bler = 0.0;
  double brate_kbps = 0.0;
  std::string scenario;

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

inline constexpr int kMaxMcs = 28;

// True when the record satisfies the per-field range invariants.
bool is_valid(const MetricRecord& r);

struct CleaningPolicy {
  double snr_min_db = -10.0;
  double snr_max_db = 40.0;
  double zscore_cutoff = 6.0;
  bool drop_zero_brate = true;

  // Throws ConfigError if the thresholds are inconsistent.
  void validate() const;
};

struct RowError {
  std::size_t line = 0;  // 1-based line number in the input, header is line 1
  std::string column;
  std::string message;
};

struct ParseResult {
  std::vector<MetricRecord> records;
  std::vector<RowError> rejected;
  std::size_t data_rows = 0;  // non-blank rows after the header
};

// Parses the canonical telemetry CSV. Header names are matched
// case-insensitively and may appear in any order; unknown columns are
// ignored. A missing required column throws SchemaError. Rows with an
// unparseable or out-of-range cell are skipped and reported in
// ParseResult::rejected.
ParseResult parse_metrics_csv(std::istream& in);

// Writes records in canonical column order. Numbers use shortest round-trip
// formatting so parse(write(r)) == r.
void write_metrics_csv(std::ostream& out, const std::vector<MetricRecord>& records);

struct AlignResult {
  std::vector<MetricRecord> records;
  std::size_t duplicates = 0;
};

// Stable sort by (ue_id, timestamp_ms). For repeated (ue_id, timestamp_ms)
// keys only the row that came last in the input is kept.
AlignResult align_timestamps(std::vector<MetricRecord> records);

struct FilterResult {
  std::vector<MetricRecord> kept;
  std::size_t dropped_count = 0;
};

// Range filter on SNR (and zero bit rate when enabled), followed by a single
// z-score pass over snr_db, brate_kbps and bler using statistics of the
// range-filtered set. Fields with zero spread are skipped by the z-score pass.
FilterResult filter_outliers(const std::vector<MetricRecord>& records,
                             const CleaningPolicy& policy);

}  // namespace ranpredict
