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

#include "ranpredict/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

#include "ranpredict/error.hpp"
#include "ranpredict/numfmt.hpp"

namespace ranpredict {

bool is_valid(const MetricRecord& r) {
  return r.mcs >= 0 && r.mcs <= kMaxMcs && r.bler >= 0.0 && r.bler <= 1.0 &&
         r.brate_kbps >= 0.0 && r.tti >= 0 && std::isfinite(r.snr_db);
}

void CleaningPolicy::validate() const {
  if (!(snr_min_db < snr_max_db)) {
    throw ConfigError("cleaning policy: snr_min_db must be < snr_max_db");
  }
  if (!(zscore_cutoff > 0.0)) {
    throw ConfigError("cleaning policy: zscore_cutoff must be > 0");
  }
}

namespace {

enum Column : int {
  kTimestamp,
  kUe,
  kTti,
  kMcs,
  kSnr,
  kBler,
  kBrate,
  kScenario,
  kColumnCount
};

constexpr std::array<std::string_view, kColumnCount> kCanonicalNames = {
    "timestamp_ms", "ue_id", "tti", "mcs", "snr_db", "bler", "brate_kbps", "scenario"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one CSV line. Double-quoted fields may contain commas; "" inside a
// quoted field is a literal quote.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct HeaderMap {
  std::array<std::optional<std::size_t>, kColumnCount> index{};
  bool bler_is_percent = false;
};

HeaderMap map_header(const std::vector<std::string>& names) {
  HeaderMap map;
  std::optional<std::size_t> bler_pct;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string name = lower(trim(names[i]));
    for (int c = 0; c < kColumnCount; ++c) {
      if (name == kCanonicalNames[c] && !map.index[c]) map.index[c] = i;
    }
    if (name == "bler_pct" && !bler_pct) bler_pct = i;
  }
  if (!map.index[kBler] && bler_pct) {
    map.index[kBler] = bler_pct;
    map.bler_is_percent = true;
  }
  for (int c = 0; c < kColumnCount; ++c) {
    if (c == kScenario) continue;
    if (!map.index[c]) {
      throw SchemaError("telemetry CSV: missing required column '" +
                        std::string(kCanonicalNames[c]) + "'");
    }
  }
  return map;
}

std::optional<RowError> parse_row(const std::vector<std::string>& cells,
                                  const HeaderMap& map, std::size_t line,
                                  MetricRecord& rec) {
  auto cell = [&](Column c) -> std::optional<std::string_view> {
    const std::size_t idx = *map.index[c];
    if (idx >= cells.size()) return std::nullopt;
    return trim(cells[idx]);
  };
  auto fail = [&](Column c, std::string msg) {
    std::string name(kCanonicalNames[c]);
    if (c == kBler && map.bler_is_percent) name = "bler_pct";
    return RowError{line, std::move(name), std::move(msg)};
  };
  auto get_int = [&](Column c, long long& out) -> std::optional<RowError> {
    auto text = cell(c);
    if (!text) return fail(c, "missing cell");
    if (!parse_int64(*text, out)) return fail(c, "not an integer: '" + std::string(*text) + "'");
    return std::nullopt;
  };
  auto get_real = [&](Column c, double& out) -> std::optional<RowError> {
    auto text = cell(c);
    if (!text) return fail(c, "missing cell");
    if (!parse_double(*text, out)) return fail(c, "not a finite number: '" + std::string(*text) + "'");
    return std::nullopt;
  };

  long long ts = 0, ue = 0, tti = 0, mcs = 0;
  double snr = 0.0, bler = 0.0, brate = 0.0;
  if (auto e = get_int(kTimestamp, ts)) return e;
  if (auto e = get_int(kUe, ue)) return e;
  if (auto e = get_int(kTti, tti)) return e;
  if (auto e = get_int(kMcs, mcs)) return e;
  if (auto e = get_real(kSnr, snr)) return e;
  if (auto e = get_real(kBler, bler)) return e;
  if (auto e = get_real(kBrate, brate)) return e;

  if (map.bler_is_percent) bler /= 100.0;
  if (ue < 0 || ue > 65535) return fail(kUe, "ue_id out of range");
  if (tti < 0) return fail(kTti, "tti must be non-negative");
  if (mcs < 0 || mcs > kMaxMcs) return fail(kMcs, "mcs outside [0, 28]");
  if (bler < 0.0 || bler > 1.0) return fail(kBler, "bler outside [0, 1]");
  if (brate < 0.0) return fail(kBrate, "brate_kbps must be non-negative");

  rec.timestamp_ms = ts;
  rec.ue_id = static_cast<int>(ue);
  rec.tti = tti;
  rec.mcs = static_cast<int>(mcs);
  rec.snr_db = snr;
  rec.bler = bler;
  rec.brate_kbps = brate;
  rec.scenario.clear();
  if (map.index[kScenario]) {
    if (auto text = cell(kScenario)) rec.scenario = std::string(*text);
  }
  return std::nullopt;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

ParseResult parse_metrics_csv(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  std::optional<HeaderMap> header;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (is_blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (!header) {
      header = map_header(cells);
      continue;
    }
    ++result.data_rows;
    MetricRecord rec;
    if (auto err = parse_row(cells, *header, line_no, rec)) {
      result.rejected.push_back(std::move(*err));
    } else {
      result.records.push_back(std::move(rec));
    }
  }
  return result;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
  out << "timestamp_ms,ue_id,tti,mcs,snr_db,bler,brate_kbps,scenario\n";
  for (const auto& r : records) {
    out << r.timestamp_ms << ',' << r.ue_id << ',' << r.tti << ',' << r.mcs << ','
        << format_double(r.snr_db) << ',' << format_double(r.bler) << ','
        << format_double(r.brate_kbps) << ',' << quote_if_needed(r.scenario) << '\n';
  }
}

AlignResult align_timestamps(std::vector<MetricRecord> records) {
  AlignResult result;
  std::stable_sort(records.begin(), records.end(),
                   [](const MetricRecord& a, const MetricRecord& b) {
                     if (a.ue_id != b.ue_id) return a.ue_id < b.ue_id;
                     return a.timestamp_ms < b.timestamp_ms;
                   });
  result.records.reserve(records.size());
  for (auto& r : records) {
    if (!result.records.empty() && result.records.back().ue_id == r.ue_id &&
        result.records.back().timestamp_ms == r.timestamp_ms) {
      // Stable sort keeps input order among equal keys, so the later row wins.
      result.records.back() = std::move(r);
      ++result.duplicates;
    } else {
      result.records.push_back(std::move(r));
    }
  }
  return result;
}

namespace {

struct FieldStats {
  double mean = 0.0;
  double stddev = 0.0;
};

template <typename Get>
FieldStats population_stats(const std::vector<const MetricRecord*>& rows, Get get) {
  FieldStats s;
  if (rows.empty()) return s;
  double sum = 0.0;
  for (const auto* r : rows) sum += get(*r);
  s.mean = sum / static_cast<double>(rows.size());
  double ss = 0.0;
  for (const auto* r : rows) {
    const double d = get(*r) - s.mean;
    ss += d * d;
  }
  s.stddev = std::sqrt(ss / static_cast<double>(rows.size()));
  return s;
}

}  // namespace

FilterResult filter_outliers(const std::vector<MetricRecord>& records,
                             const CleaningPolicy& policy) {
  policy.validate();

  std::vector<const MetricRecord*> in_range;
  in_range.reserve(records.size());
  for (const auto& r : records) {
    if (r.snr_db < policy.snr_min_db || r.snr_db > policy.snr_max_db) continue;
    if (policy.drop_zero_brate && r.brate_kbps <= 0.0) continue;
    in_range.push_back(&r);
  }

  using Getter = double (*)(const MetricRecord&);
  const std::array<Getter, 3> fields = {
      [](const MetricRecord& r) { return r.snr_db; },
      [](const MetricRecord& r) { return r.brate_kbps; },
      [](const MetricRecord& r) { return r.bler; },
  };
  std::array<FieldStats, 3> stats{};
  for (std::size_t f = 0; f < fields.size(); ++f) {
    stats[f] = population_stats(in_range, fields[f]);
  }

  FilterResult result;
  result.kept.reserve(in_range.size());
  for (const auto* r : in_range) {
    bool outlier = false;
    for (std::size_t f = 0; f < fields.size() && !outlier; ++f) {
      if (stats[f].stddev == 0.0) continue;
      const double z = std::abs(fields[f](*r) - stats[f].mean) / stats[f].stddev;
      outlier = z > policy.zscore_cutoff;
    }
    if (!outlier) result.kept.push_back(*r);
  }
  result.dropped_count = records.size() - result.kept.size();
  return result;
}

}  // namespace ranpredict
