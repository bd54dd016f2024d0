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

#include "ranpredict/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ranpredict/error.hpp"
#include "ranpredict/numfmt.hpp"
#include "ranpredict/random.hpp"

namespace ranpredict {

FeatureMatrix::FeatureMatrix(std::vector<std::string> column_names, std::vector<double> values)
    : names_(std::move(column_names)), values_(std::move(values)) {
  if (names_.empty()) {
    if (!values_.empty()) throw DimensionError("feature matrix: values given without columns");
    return;
  }
  if (values_.size() % names_.size() != 0) {
    throw DimensionError("feature matrix: value count is not a multiple of the column count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("feature matrix: non-finite entry");
  }
  rows_ = values_.size() / names_.size();
}

FeatureMatrix FeatureMatrix::from_rows(std::vector<std::string> column_names,
                                       const std::vector<std::vector<double>>& rows) {
  std::vector<double> values;
  values.reserve(rows.size() * column_names.size());
  for (const auto& r : rows) {
    if (r.size() != column_names.size()) {
      throw DimensionError("feature matrix: ragged row");
    }
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureMatrix(std::move(column_names), std::move(values));
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  for (std::size_t i : indices) {
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureMatrix(names_, std::move(values));
}

TargetVector TargetVector::select(std::span<const std::size_t> indices) const {
  TargetVector out{name, {}};
  out.values.reserve(indices.size());
  for (std::size_t i : indices) out.values.push_back(values[i]);
  return out;
}

std::string_view target_name(Target t) {
  return t == Target::kBrate ? "brate" : "snr";
}

Target parse_target(std::string_view name) {
  if (name == "brate" || name == "brate_kbps") return Target::kBrate;
  if (name == "snr" || name == "snr_db" || name == "cqi") return Target::kSnr;
  throw ConfigError("unknown task '" + std::string(name) + "' (expected brate or snr)");
}

namespace {

enum class Field { kBler, kTti, kMcs, kSnr, kBrate, kUe };

bool resolve_field(std::string_view name, Field& out) {
  if (name == "bler") out = Field::kBler;
  else if (name == "tti") out = Field::kTti;
  else if (name == "mcs") out = Field::kMcs;
  else if (name == "snr" || name == "snr_db" || name == "cqi") out = Field::kSnr;
  else if (name == "brate" || name == "brate_kbps") out = Field::kBrate;
  else if (name == "ue_id") out = Field::kUe;
  else return false;
  return true;
}

double field_value(const MetricRecord& r, Field f) {
  switch (f) {
    case Field::kBler: return r.bler;
    case Field::kTti: return static_cast<double>(r.tti);
    case Field::kMcs: return static_cast<double>(r.mcs);
    case Field::kSnr: return r.snr_db;
    case Field::kBrate: return r.brate_kbps;
    case Field::kUe: return static_cast<double>(r.ue_id);
  }
  return 0.0;
}

Field target_field(Target t) { return t == Target::kBrate ? Field::kBrate : Field::kSnr; }

}  // namespace

TaskSpec TaskSpec::defaults(Target target) {
  if (target == Target::kBrate) return {target, {"bler", "tti", "mcs", "snr"}};
  return {target, {"brate", "tti", "mcs", "bler"}};
}

void TaskSpec::validate() const {
  if (features.empty()) throw ConfigError("task: feature list is empty");
  for (const auto& name : features) {
    Field f{};
    if (!resolve_field(name, f)) {
      throw ConfigError("task: unknown feature '" + name + "'");
    }
    if (f == target_field(target)) {
      throw ConfigError("task: target '" + std::string(target_name(target)) +
                        "' cannot also be a feature");
    }
  }
}

Task build_task(const std::vector<MetricRecord>& records, const TaskSpec& spec) {
  spec.validate();
  if (records.empty()) throw ConfigError("build_task: no records");
  std::vector<Field> fields;
  for (const auto& name : spec.features) {
    Field f{};
    resolve_field(name, f);
    fields.push_back(f);
  }
  std::vector<double> values;
  values.reserve(records.size() * fields.size());
  TargetVector y{std::string(target_name(spec.target)), {}};
  y.values.reserve(records.size());
  const Field tf = target_field(spec.target);
  for (const auto& r : records) {
    for (Field f : fields) values.push_back(field_value(r, f));
    y.values.push_back(field_value(r, tf));
  }
  return {FeatureMatrix(spec.features, std::move(values)), std::move(y)};
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

TrainTestSplit split_train_test(const FeatureMatrix& x, const TargetVector& y,
                                double train_fraction, std::uint64_t seed, SplitMode mode) {
  if (x.rows() != y.size()) {
    throw DimensionError("split: feature rows and target length differ");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("split: train_fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = x.rows();
  if (n < 2) throw ConfigError("split: need at least 2 rows to form train and test sets");
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) {
    throw ConfigError("split: train_fraction leaves one partition empty");
  }

  std::vector<std::size_t> order;
  if (mode == SplitMode::kShuffled) {
    order = shuffled_indices(n, seed);
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }

  TrainTestSplit s;
  s.train_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  s.x_train = x.select_rows(s.train_rows);
  s.y_train = y.select(s.train_rows);
  s.x_test = x.select_rows(s.test_rows);
  s.y_test = y.select(s.test_rows);
  return s;
}

Scaler fit_scaler(const FeatureMatrix& x_train) {
  if (x_train.rows() == 0) throw ConfigError("fit_scaler: empty training matrix");
  const std::size_t n = x_train.rows();
  const std::size_t p = x_train.cols();
  Scaler s;
  s.columns = x_train.column_names();
  s.means.assign(p, 0.0);
  s.stds.assign(p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    // Shift by the first value so a constant column yields exactly 0 spread.
    const double pivot = x_train(0, c);
    double shifted = 0.0;
    for (std::size_t r = 0; r < n; ++r) shifted += x_train(r, c) - pivot;
    const double mean = pivot + shifted / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = x_train(r, c) - mean;
      ss += d * d;
    }
    s.means[c] = mean;
    s.stds[c] = std::sqrt(ss / static_cast<double>(n));
  }
  return s;
}

FeatureMatrix transform(const Scaler& scaler, const FeatureMatrix& x) {
  if (x.cols() != scaler.size()) {
    throw DimensionError("transform: matrix has " + std::to_string(x.cols()) +
                         " columns, scaler was fit on " + std::to_string(scaler.size()));
  }
  std::vector<double> values(x.values());
  const std::size_t p = x.cols();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t c = i % p;
    values[i] = scaler.stds[c] == 0.0 ? 0.0 : (values[i] - scaler.means[c]) / scaler.stds[c];
  }
  return FeatureMatrix(x.column_names(), std::move(values));
}

namespace {
constexpr const char* kScalerFormat = "ranpredict-scaler";
constexpr int kScalerVersion = 1;
}  // namespace

std::string serialize_scaler(const Scaler& scaler) {
  nlohmann::json j;
  j["format"] = kScalerFormat;
  j["version"] = kScalerVersion;
  j["columns"] = scaler.columns;
  j["means"] = scaler.means;
  j["stds"] = scaler.stds;
  return j.dump(2) + "\n";
}

Scaler deserialize_scaler(std::string_view payload) {
  try {
    const auto j = nlohmann::json::parse(payload);
    if (j.at("format").get<std::string>() != kScalerFormat) {
      throw DecodeError("scaler: unexpected format tag");
    }
    if (j.at("version").get<int>() != kScalerVersion) {
      throw DecodeError("scaler: unsupported version " + j.at("version").dump());
    }
    Scaler s;
    s.columns = j.at("columns").get<std::vector<std::string>>();
    s.means = j.at("means").get<std::vector<double>>();
    s.stds = j.at("stds").get<std::vector<double>>();
    if (s.means.size() != s.columns.size() || s.stds.size() != s.columns.size()) {
      throw DecodeError("scaler: array lengths disagree");
    }
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (!std::isfinite(s.means[c]) || !std::isfinite(s.stds[c]) || s.stds[c] < 0.0) {
        throw DecodeError("scaler: invalid statistics for column " + s.columns[c]);
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("scaler: ") + e.what());
  }
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& x, const TargetVector* y) {
  const auto& names = x.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  if (y) out << (names.empty() ? "" : ",") << y->name;
  out << '\n';
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      out << (c ? "," : "") << format_double(x(r, c));
    }
    if (y) out << (x.cols() ? "," : "") << format_double(y->values[r]);
    out << '\n';
  }
}

}  // namespace ranpredict
