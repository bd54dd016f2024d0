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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ranpredict/ingest.hpp"

namespace ranpredict {

/// Dense row-major design matrix with named columns.
///
/// Every entry is finite; the constructor rejects NaN/Inf.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> column_names, std::vector<double> values);

  static FeatureMatrix from_rows(std::vector<std::string> column_names,
                                 const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  std::vector<double> column(std::size_t c) const;

  const std::vector<std::string>& column_names() const { return names_; }
  const std::vector<double>& values() const { return values_; }

  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::size_t rows_ = 0;
};

struct TargetVector {
  std::string name;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  TargetVector select(std::span<const std::size_t> indices) const;
};

enum class Target { kBrate, kSnr };

std::string_view target_name(Target t);
Target parse_target(std::string_view name);  // throws ConfigError

/// Which column is predicted from which. Feature names resolve against
/// MetricRecord fields: bler, tti, mcs, snr (aliases snr_db, cqi), brate
/// (alias brate_kbps), ue_id.
struct TaskSpec {
  Target target = Target::kBrate;
  std::vector<std::string> features;

  // brate: [bler, tti, mcs, snr]; snr: [brate, tti, mcs, bler].
  static TaskSpec defaults(Target target);
  void validate() const;
};

struct Task {
  FeatureMatrix x;
  TargetVector y;
};

Task build_task(const std::vector<MetricRecord>& records, const TaskSpec& spec);

enum class SplitMode {
  kShuffled,  // deterministic shuffle keyed by seed, then partition
  kTemporal,  // keep input order; first fraction is the training set
};

struct TrainTestSplit {
  FeatureMatrix x_train;
  TargetVector y_train;
  FeatureMatrix x_test;
  TargetVector y_test;
  std::vector<std::size_t> train_rows;  // row indices into the input
  std::vector<std::size_t> test_rows;
};

// floor(train_fraction * n) rows go to training, the rest to test.
// Throws ConfigError for n < 2 or a fraction outside (0, 1), and also when
// either side would end up empty.
TrainTestSplit split_train_test(const FeatureMatrix& x, const TargetVector& y,
                                double train_fraction, std::uint64_t seed,
                                SplitMode mode = SplitMode::kShuffled);

// Deterministic Fisher-Yates permutation of [0, n).
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

/// Per-column z-score parameters. stds are population standard deviations;
/// a zero std marks a constant column, which transforms to 0.
struct Scaler {
  std::vector<std::string> columns;
  std::vector<double> means;
  std::vector<double> stds;

  std::size_t size() const { return means.size(); }
};

Scaler fit_scaler(const FeatureMatrix& x_train);
FeatureMatrix transform(const Scaler& scaler, const FeatureMatrix& x);

std::string serialize_scaler(const Scaler& scaler);
Scaler deserialize_scaler(std::string_view payload);  // throws DecodeError

// Debug dump: feature columns followed by the target column when given.
void write_matrix_csv(std::ostream& out, const FeatureMatrix& x,
                      const TargetVector* y = nullptr);

}  // namespace ranpredict
