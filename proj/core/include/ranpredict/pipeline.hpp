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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ranpredict/boosting.hpp"
#include "ranpredict/dataset.hpp"
#include "ranpredict/forest.hpp"
#include "ranpredict/importance.hpp"
#include "ranpredict/ingest.hpp"
#include "ranpredict/metrics.hpp"
#include "ranpredict/model.hpp"
#include "ranpredict/synthgen.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict {

// Everything train and evaluate need. Both commands must see the same
// values for input, task, features, cleaning, seed, train_fraction and
// temporal: the test partition is rebuilt from them instead of being stored.
struct RunConfig {
  Target task = Target::kBrate;
  std::vector<std::string> features;  // empty: task defaults
  std::vector<ModelKind> models{kAllModelKinds.begin(), kAllModelKinds.end()};
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
  bool temporal = false;
  std::filesystem::path input;
  std::filesystem::path out_dir;

  CleaningPolicy cleaning;
  TreeParams tree;
  ForestParams forest;
  SecondOrderParams xgb;
  LeafwiseParams lgbm;
  unsigned threads = 0;

  std::size_t error_bins = kDefaultErrorBins;
  // Evaluate on the training partition instead of the test partition.
  bool evaluate_on_train = false;

  TaskSpec task_spec() const;
  void validate() const;  // throws ConfigError
};

// Artifact file names inside the output directory.
namespace artifacts {
inline constexpr const char* kScaler = "scaler.json";
inline constexpr const char* kTrainSummary = "train_summary.csv";
inline constexpr const char* kComparison = "comparison.csv";
inline constexpr const char* kReport = "report.md";
std::string model_file(ModelKind kind);        // model_<kind>.json
std::string scatter_file(ModelKind kind);      // scatter_<kind>.csv
std::string error_hist_file(ModelKind kind);   // error_hist_<kind>.csv
std::string importance_file(ModelKind kind);   // importance_<kind>.csv
}  // namespace artifacts

struct PreparedData {
  TrainTestSplit split;
  std::size_t data_rows = 0;
  std::vector<RowError> rejected;
  std::size_t duplicates = 0;
  std::size_t outliers_dropped = 0;
};

// align -> filter -> build_task -> split.
PreparedData prepare_records(std::vector<MetricRecord> records, const RunConfig& config);
// Reads config.input, then prepare_records.
PreparedData prepare_data(const RunConfig& config);

// Fits one model on already-scaled features.
Model fit_model(ModelKind kind, const FeatureMatrix& x, const TargetVector& y,
                const RunConfig& config);

struct TrainedModel {
  ModelKind kind;
  double train_mse = 0.0;
  double seconds = 0.0;  // wall time of the fit; not written to disk
};

struct TrainSummary {
  PreparedData data;
  std::vector<TrainedModel> models;
};

// Writes scaler.json, model_<kind>.json per model and train_summary.csv.
TrainSummary run_train(const RunConfig& config);

struct EvaluatedModel {
  ModelKind kind;
  EvalResult metrics;
};

// Writes comparison.csv plus scatter_<kind>.csv and error_hist_<kind>.csv
// per model.
std::vector<EvaluatedModel> run_evaluate(const RunConfig& config);

// feature,total_gain,share rows, highest share first.
void write_importance_csv(std::ostream& out, const ImportanceReport& report);

// Loads a model file and computes its importance. Throws
// UnsupportedModelError for linear models.
ImportanceReport importance_from_file(const std::filesystem::path& model_file);

// Builds report.md from the artifacts in out_dir; throws IoError naming
// every missing input.
std::filesystem::path run_report(const std::filesystem::path& out_dir);

// Generates records and writes them as canonical CSV; returns the count.
std::size_t run_synth(const GenConfig& config, const std::filesystem::path& out_csv);

// Small file helpers that throw IoError with the offending path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ranpredict
