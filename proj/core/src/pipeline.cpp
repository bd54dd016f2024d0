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

#include "ranpredict/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "ranpredict/error.hpp"
#include "ranpredict/numfmt.hpp"

namespace ranpredict {

namespace fs = std::filesystem;

std::string artifacts::model_file(ModelKind kind) {
  return "model_" + std::string(model_kind_name(kind)) + ".json";
}
std::string artifacts::scatter_file(ModelKind kind) {
  return "scatter_" + std::string(model_kind_name(kind)) + ".csv";
}
std::string artifacts::error_hist_file(ModelKind kind) {
  return "error_hist_" + std::string(model_kind_name(kind)) + ".csv";
}
std::string artifacts::importance_file(ModelKind kind) {
  return "importance_" + std::string(model_kind_name(kind)) + ".csv";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

TaskSpec RunConfig::task_spec() const {
  TaskSpec spec = TaskSpec::defaults(task);
  if (!features.empty()) spec.features = features;
  return spec;
}

void RunConfig::validate() const {
  if (models.empty()) throw ConfigError("run: at least one model must be selected");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("run: train_fraction must lie strictly between 0 and 1");
  }
  if (error_bins < 1) throw ConfigError("run: error_bins must be >= 1");
  task_spec().validate();
  cleaning.validate();
  tree.validate();
  forest.validate();
  xgb.validate();
  lgbm.validate();
}

PreparedData prepare_records(std::vector<MetricRecord> records, const RunConfig& config) {
  PreparedData data;
  data.data_rows = records.size();
  auto aligned = align_timestamps(std::move(records));
  data.duplicates = aligned.duplicates;
  auto filtered = filter_outliers(aligned.records, config.cleaning);
  data.outliers_dropped = filtered.dropped_count;
  if (filtered.kept.size() < 2) {
    throw ConfigError("run: fewer than 2 records survive cleaning");
  }
  const Task task = build_task(filtered.kept, config.task_spec());
  data.split = split_train_test(task.x, task.y, config.train_fraction, config.seed,
                                config.temporal ? SplitMode::kTemporal : SplitMode::kShuffled);
  return data;
}

PreparedData prepare_data(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("run: no input file given");
  std::ifstream in(config.input, std::ios::binary);
  if (!in) throw IoError("cannot open '" + config.input.string() + "' for reading");
  auto parsed = parse_metrics_csv(in);
  const std::size_t rows = parsed.data_rows;
  auto rejected = std::move(parsed.rejected);
  PreparedData data = prepare_records(std::move(parsed.records), config);
  data.data_rows = rows;
  data.rejected = std::move(rejected);
  return data;
}

Model fit_model(ModelKind kind, const FeatureMatrix& x, const TargetVector& y,
                const RunConfig& config) {
  switch (kind) {
    case ModelKind::kLinear: return fit_linear(x, y);
    case ModelKind::kTree: return fit_tree(x, y, config.tree);
    case ModelKind::kForest: {
      ForestParams p = config.forest;
      if (config.threads) p.n_threads = config.threads;
      return fit_forest(x, y, p);
    }
    case ModelKind::kXgbLike: return fit_boosted_second_order(x, y, config.xgb);
    case ModelKind::kLgbmLike: return fit_boosted_leafwise(x, y, config.lgbm);
  }
  throw ConfigError("fit_model: unhandled model kind");
}

namespace {

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) throw ConfigError("run: no output directory given");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

void check_columns(const std::vector<std::string>& expected, const std::vector<std::string>& got,
                   const std::string& what) {
  if (expected != got) {
    std::string msg = what + " columns [";
    for (std::size_t i = 0; i < got.size(); ++i) msg += (i ? "," : "") + got[i];
    msg += "] do not match task features [";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? "," : "") + expected[i];
    throw DimensionError(msg + "]");
  }
}

}  // namespace

TrainSummary run_train(const RunConfig& config) {
  config.validate();
  ensure_dir(config.out_dir);
  TrainSummary summary;
  summary.data = prepare_data(config);
  const auto& split = summary.data.split;

  const Scaler scaler = fit_scaler(split.x_train);
  const FeatureMatrix x_train = transform(scaler, split.x_train);
  write_file(config.out_dir / artifacts::kScaler, serialize_scaler(scaler));

  std::ostringstream csv;
  csv << "model,task,n_train,n_test,train_mse\n";
  for (ModelKind kind : config.models) {
    const auto start = std::chrono::steady_clock::now();
    const Model model = fit_model(kind, x_train, split.y_train, config);
    const auto stop = std::chrono::steady_clock::now();

    TrainedModel t{kind, 0.0, std::chrono::duration<double>(stop - start).count()};
    t.train_mse = mse(split.y_train.values, predict(model, x_train).values);
    write_file(config.out_dir / artifacts::model_file(kind), serialize_model(model));
    csv << model_kind_name(kind) << ',' << target_name(config.task) << ','
        << split.y_train.size() << ',' << split.y_test.size() << ',' << format_double(t.train_mse)
        << '\n';
    summary.models.push_back(t);
  }
  write_file(config.out_dir / artifacts::kTrainSummary, csv.str());
  return summary;
}

std::vector<EvaluatedModel> run_evaluate(const RunConfig& config) {
  config.validate();
  ensure_dir(config.out_dir);
  const PreparedData data = prepare_data(config);
  const auto& split = data.split;
  const FeatureMatrix& x_raw = config.evaluate_on_train ? split.x_train : split.x_test;
  const TargetVector& y = config.evaluate_on_train ? split.y_train : split.y_test;

  const Scaler scaler = deserialize_scaler(read_file(config.out_dir / artifacts::kScaler));
  check_columns(x_raw.column_names(), scaler.columns, "scaler");
  const FeatureMatrix x = transform(scaler, x_raw);

  std::vector<EvaluatedModel> results;
  std::ostringstream comparison;
  comparison << "model,mse,rmse,r2\n";
  for (ModelKind kind : config.models) {
    const Model model = deserialize_model(read_file(config.out_dir / artifacts::model_file(kind)));
    check_columns(x.column_names(), feature_names(model), std::string(model_kind_name(kind)));
    const TargetVector y_hat = predict(model, x);

    EvaluatedModel r{kind, evaluate(y.values, y_hat.values)};
    comparison << model_kind_name(kind) << ',' << format_double(r.metrics.mse) << ','
               << format_double(r.metrics.rmse) << ',' << format_double(r.metrics.r2) << '\n';

    std::ostringstream scatter;
    scatter << "actual,predicted\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
      scatter << format_double(y.values[i]) << ',' << format_double(y_hat.values[i]) << '\n';
    }
    write_file(config.out_dir / artifacts::scatter_file(kind), scatter.str());

    const ErrorHistogram hist = error_histogram(y.values, y_hat.values, config.error_bins);
    std::ostringstream hcsv;
    hcsv << "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      hcsv << format_double(hist.bin_edges[b]) << ',' << format_double(hist.bin_edges[b + 1])
           << ',' << hist.counts[b] << '\n';
    }
    write_file(config.out_dir / artifacts::error_hist_file(kind), hcsv.str());
    results.push_back(r);
  }
  write_file(config.out_dir / artifacts::kComparison, comparison.str());
  return results;
}

void write_importance_csv(std::ostream& out, const ImportanceReport& report) {
  out << "feature,total_gain,share\n";
  for (const auto& f : report.ranked()) {
    out << f.name << ',' << format_double(f.total_gain) << ',' << format_double(f.share) << '\n';
  }
}

ImportanceReport importance_from_file(const fs::path& model_file) {
  return gain_importance(deserialize_model(read_file(model_file)));
}

namespace {

struct ComparisonRow {
  std::string model;
  std::string mse, rmse, r2;
};

std::vector<ComparisonRow> read_comparison(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<ComparisonRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw IoError("malformed row in '" + path.string() + "': " + line);
    rows.push_back({cells[0], cells[1], cells[2], cells[3]});
  }
  return rows;
}

std::string fixed_cell(const std::string& text) {
  double v = 0.0;
  return parse_double(text, v) ? format_fixed(v, 6) : text;
}

}  // namespace

fs::path run_report(const fs::path& out_dir) {
  std::vector<std::string> missing;
  const auto need = [&](const std::string& name) {
    if (!fs::is_regular_file(out_dir / name)) missing.push_back(name);
  };

  std::vector<ModelKind> kinds;
  const bool have_comparison = fs::is_regular_file(out_dir / artifacts::kComparison);
  std::vector<ComparisonRow> rows;
  if (have_comparison) {
    rows = read_comparison(out_dir / artifacts::kComparison);
    for (const auto& r : rows) {
      try {
        kinds.push_back(parse_model_kind(r.model));
      } catch (const ConfigError&) {
        throw IoError("unknown model '" + r.model + "' in " + artifacts::kComparison);
      }
    }
  } else {
    need(artifacts::kComparison);
    kinds.assign(kAllModelKinds.begin(), kAllModelKinds.end());
  }
  need(artifacts::kTrainSummary);
  for (ModelKind k : kinds) {
    need(artifacts::model_file(k));
    need(artifacts::scatter_file(k));
    need(artifacts::error_hist_file(k));
  }
  if (!missing.empty()) {
    std::string msg = "report: missing inputs in '" + out_dir.string() + "':";
    for (const auto& m : missing) msg += "\n  " + m;
    throw IoError(msg);
  }

  std::ostringstream md;
  md << "# Uplink KPI prediction report\n\n";
  md << "## Model comparison (test partition)\n\n";
  md << "| Model | MSE | RMSE | R^2 |\n|---|---:|---:|---:|\n";
  for (const auto& r : rows) {
    md << "| " << r.model << " | " << fixed_cell(r.mse) << " | " << fixed_cell(r.rmse) << " | "
       << fixed_cell(r.r2) << " |\n";
  }

  md << "\n## Feature importance (gain share)\n";
  for (ModelKind k : kinds) {
    const Model model = deserialize_model(read_file(out_dir / artifacts::model_file(k)));
    if (!is_tree_based(model)) continue;
    const ImportanceReport imp = gain_importance(model);
    std::ostringstream csv;
    write_importance_csv(csv, imp);
    write_file(out_dir / artifacts::importance_file(k), csv.str());
    md << "\n### " << model_kind_name(k) << "\n\n";
    md << "Data: [" << artifacts::importance_file(k) << "](" << artifacts::importance_file(k)
       << ")\n\n";
    if (!imp.has_splits) {
      md << "No splits in this model; all shares are 0.\n";
      continue;
    }
    md << "| Rank | Feature | Share | Total gain |\n|---:|---|---:|---:|\n";
    std::size_t rank = 1;
    for (const auto& f : imp.ranked()) {
      md << "| " << rank++ << " | " << f.name << " | " << format_fixed(f.share, 4) << " | "
         << format_fixed(f.total_gain, 4) << " |\n";
    }
  }

  md << "\n## Plot data\n\n";
  md << "| Model | Actual vs predicted | Error histogram |\n|---|---|---|\n";
  for (ModelKind k : kinds) {
    md << "| " << model_kind_name(k) << " | [" << artifacts::scatter_file(k) << "]("
       << artifacts::scatter_file(k) << ") | [" << artifacts::error_hist_file(k) << "]("
       << artifacts::error_hist_file(k) << ") |\n";
  }

  const fs::path out = out_dir / artifacts::kReport;
  write_file(out, md.str());
  return out;
}

std::size_t run_synth(const GenConfig& config, const fs::path& out_csv) {
  const auto records = generate(config);
  std::ostringstream csv;
  write_metrics_csv(csv, records);
  write_file(out_csv, csv.str());
  return records.size();
}

}  // namespace ranpredict
