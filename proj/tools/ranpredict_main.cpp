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

// ranpredict: command-line front end.
//
//   ranpredict synth      --config gen.cfg --out data.csv
//   ranpredict train      --input data.csv --out run/ [--task brate|snr] ...
//   ranpredict evaluate   --input data.csv --out run/ [same flags as train]
//   ranpredict importance --model run/model_lgbm_like.json [--out imp.csv]
//   ranpredict report     --out run/
//
// Exit codes: 0 ok, 1 internal error, 2 usage/config error, 3 input
// parse/decode error, 4 I/O error, 5 unsupported model.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ranpredict/error.hpp"
#include "ranpredict/numfmt.hpp"
#include "ranpredict/pipeline.hpp"

namespace {

using namespace ranpredict;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kIo = 4,
  kUnsupported = 5,
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("ranpredict");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("RANPREDICT_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"; only honour it when asked for.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

// String-typed mirrors of enum-valued options, resolved after parsing.
struct RunFlags {
  std::string task = "brate";
  std::vector<std::string> models;
};

// Applies a flat "key = value" file to the options of one subcommand.
// Keys are long option names without dashes; options given on the command
// line take precedence over the file.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::FileError& e) {
    throw IoError("cannot read config file '" + path + "': " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw ConfigError("config file '" + path + "': unknown key '" + item.name + "'");
    }
    if (opt->count() > 0) continue;
    try {
      for (const auto& v : item.inputs) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config file '" + path + "': key '" + item.name + "': " + e.what());
    }
  }
}

void add_run_options(CLI::App* cmd, RunConfig& cfg, RunFlags& flags, std::string& config) {
  cmd->add_option("--config", config, "Flat key = value config file (keys are long option names)");
  cmd->add_option("--input,-i", cfg.input, "Telemetry CSV");
  cmd->add_option("--out,-o", cfg.out_dir, "Output directory for models and reports");
  cmd->add_option("--task", flags.task, "Prediction target: brate or snr")->capture_default_str();
  cmd->add_option("--features", cfg.features, "Override the feature list (comma separated)")
      ->delimiter(',');
  cmd->add_option("--models", flags.models,
                  "Comma separated subset of linear,tree,forest,xgb_like,lgbm_like")
      ->delimiter(',');
  cmd->add_option("--seed", cfg.seed, "Split and forest seed")->capture_default_str();
  cmd->add_option("--train-fraction", cfg.train_fraction)->capture_default_str();
  cmd->add_flag("--temporal", cfg.temporal, "Keep record order; first fraction trains");
  cmd->add_option("--threads", cfg.threads, "Forest worker threads (0 = all cores)");

  cmd->add_option("--snr-min-db", cfg.cleaning.snr_min_db)->capture_default_str();
  cmd->add_option("--snr-max-db", cfg.cleaning.snr_max_db)->capture_default_str();
  cmd->add_option("--zscore-cutoff", cfg.cleaning.zscore_cutoff)->capture_default_str();
  cmd->add_option("--drop-zero-brate", cfg.cleaning.drop_zero_brate)->capture_default_str();

  cmd->add_option("--tree-max-depth", cfg.tree.max_depth)->capture_default_str();
  cmd->add_option("--tree-min-samples-leaf", cfg.tree.min_samples_leaf)->capture_default_str();

  cmd->add_option("--forest-n-trees", cfg.forest.n_trees)->capture_default_str();
  cmd->add_option("--forest-max-depth", cfg.forest.max_depth)->capture_default_str();
  cmd->add_option("--forest-min-samples-leaf", cfg.forest.min_samples_leaf)->capture_default_str();
  cmd->add_option("--forest-feature-fraction", cfg.forest.feature_fraction)->capture_default_str();
  cmd->add_option("--forest-bootstrap", cfg.forest.bootstrap)->capture_default_str();

  cmd->add_option("--xgb-n-rounds", cfg.xgb.n_rounds)->capture_default_str();
  cmd->add_option("--xgb-learning-rate", cfg.xgb.learning_rate)->capture_default_str();
  cmd->add_option("--xgb-lambda", cfg.xgb.lambda)->capture_default_str();
  cmd->add_option("--xgb-max-depth", cfg.xgb.max_depth)->capture_default_str();
  cmd->add_option("--xgb-min-samples-leaf", cfg.xgb.min_samples_leaf)->capture_default_str();

  cmd->add_option("--lgbm-n-rounds", cfg.lgbm.n_rounds)->capture_default_str();
  cmd->add_option("--lgbm-learning-rate", cfg.lgbm.learning_rate)->capture_default_str();
  cmd->add_option("--lgbm-lambda", cfg.lgbm.lambda)->capture_default_str();
  cmd->add_option("--lgbm-num-leaves", cfg.lgbm.num_leaves)->capture_default_str();
  cmd->add_option("--lgbm-n-bins", cfg.lgbm.n_bins)->capture_default_str();
  cmd->add_option("--lgbm-min-samples-leaf", cfg.lgbm.min_samples_leaf)->capture_default_str();
  cmd->add_option("--lgbm-max-depth", cfg.lgbm.max_depth)->capture_default_str();
}

void resolve_run_flags(RunConfig& cfg, const RunFlags& flags) {
  cfg.task = parse_target(flags.task);
  cfg.forest.seed = cfg.seed;
  if (!flags.models.empty()) {
    cfg.models.clear();
    for (const auto& m : flags.models) cfg.models.push_back(parse_model_kind(m));
  }
}

// --input/--out may come from the config file, so they are checked after it
// has been applied rather than marked required.
void require_path(const std::filesystem::path& p, const char* flag) {
  if (p.empty()) throw ConfigError(std::string(flag) + " is required (on the command line or in --config)");
}

void log_data_summary(const PreparedData& data) {
  spdlog::info("{} data rows, {} rejected, {} duplicate timestamps, {} outliers dropped",
               data.data_rows, data.rejected.size(), data.duplicates, data.outliers_dropped);
  for (const auto& e : data.rejected) {
    spdlog::warn("line {}: column {}: {}", e.line, e.column, e.message);
  }
  spdlog::info("train rows {}, test rows {}", data.split.y_train.size(), data.split.y_test.size());
}

int run(int argc, char** argv) {
  CLI::App app{"Uplink bit rate / SNR regression toolkit"};
  app.require_subcommand(1);

  // synth
  GenConfig gen;
  std::filesystem::path synth_out;
  std::string synth_config, train_config, eval_config;
  auto* synth = app.add_subcommand("synth", "Generate synthetic telemetry CSV");
  synth->add_option("--config", synth_config, "Flat key = value generator config");
  synth->add_option("--out,-o", synth_out, "Output CSV path");
  synth->add_option("--n-samples", gen.n_samples)->capture_default_str();
  synth->add_option("--seed", gen.seed)->capture_default_str();
  synth->add_option("--snr-mean-db", gen.snr_mean_db)->capture_default_str();
  synth->add_option("--snr-std-db", gen.snr_std_db)->capture_default_str();
  synth->add_option("--mcs-table", gen.mcs_table, "29 spectral efficiencies")->delimiter(',');
  synth->add_option("--snr-thresholds-db", gen.snr_thresholds_db, "29 MCS selection thresholds")
      ->delimiter(',');
  synth->add_option("--bler-steepness", gen.bler_steepness)->capture_default_str();
  synth->add_option("--brate-scale-kbps", gen.brate_scale_kbps)->capture_default_str();
  synth->add_option("--noise-std-kbps", gen.noise_std_kbps)->capture_default_str();
  synth->add_option("--tti-period", gen.tti_period)->capture_default_str();
  synth->add_option("--start-timestamp-ms", gen.start_timestamp_ms)->capture_default_str();
  synth->add_option("--ue-id", gen.ue_id)->capture_default_str();
  synth->add_option("--scenario", gen.scenario)->capture_default_str();

  // train / evaluate
  RunConfig train_cfg, eval_cfg;
  RunFlags train_flags, eval_flags;
  auto* train = app.add_subcommand("train", "Clean, split, scale and fit the selected models");
  add_run_options(train, train_cfg, train_flags, train_config);
  auto* evaluate = app.add_subcommand("evaluate", "Score trained models on the test partition");
  add_run_options(evaluate, eval_cfg, eval_flags, eval_config);
  evaluate->add_flag("--on-train", eval_cfg.evaluate_on_train,
                     "Score on the training partition instead");
  evaluate->add_option("--error-bins", eval_cfg.error_bins)->capture_default_str();

  // importance
  std::filesystem::path imp_model, imp_out;
  auto* importance = app.add_subcommand("importance", "Gain-based feature importance of a model");
  importance->add_option("--model,-m", imp_model, "Model JSON file")->required();
  importance->add_option("--out,-o", imp_out, "CSV output path (default: stdout)");

  // report
  std::filesystem::path report_dir;
  auto* report = app.add_subcommand("report", "Write report.md from evaluate outputs");
  report->add_option("--out,-o", report_dir, "Directory holding train/evaluate outputs")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*synth) {
    apply_config_file(synth, synth_config);
    require_path(synth_out, "--out");
    const std::size_t n = run_synth(gen, synth_out);
    if (n == 0) spdlog::warn("n_samples = 0: wrote header-only file");
    std::cout << "wrote " << n << " records to " << synth_out.string() << "\n";
  } else if (*train) {
    apply_config_file(train, train_config);
    require_path(train_cfg.input, "--input");
    require_path(train_cfg.out_dir, "--out");
    resolve_run_flags(train_cfg, train_flags);
    const TrainSummary s = run_train(train_cfg);
    log_data_summary(s.data);
    std::cout << "model,train_mse,seconds\n";
    for (const auto& m : s.models) {
      std::cout << model_kind_name(m.kind) << ',' << format_double(m.train_mse) << ','
                << format_fixed(m.seconds, 3) << '\n';
    }
  } else if (*evaluate) {
    apply_config_file(evaluate, eval_config);
    require_path(eval_cfg.input, "--input");
    require_path(eval_cfg.out_dir, "--out");
    resolve_run_flags(eval_cfg, eval_flags);
    const auto results = run_evaluate(eval_cfg);
    std::cout << "model,mse,rmse,r2\n";
    for (const auto& r : results) {
      std::cout << model_kind_name(r.kind) << ',' << format_double(r.metrics.mse) << ','
                << format_double(r.metrics.rmse) << ',' << format_double(r.metrics.r2) << '\n';
    }
  } else if (*importance) {
    const ImportanceReport rep = importance_from_file(imp_model);
    if (!rep.has_splits) spdlog::warn("model has no splits; all importance shares are 0");
    std::ostringstream csv;
    write_importance_csv(csv, rep);
    if (imp_out.empty()) {
      std::cout << csv.str();
    } else {
      write_file(imp_out, csv.str());
      spdlog::info("wrote {}", imp_out.string());
    }
  } else if (*report) {
    const auto path = run_report(report_dir);
    std::cout << "wrote " << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  try {
    return run(argc, argv);
  } catch (const ranpredict::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kUsage;
  } catch (const ranpredict::DimensionError& e) {
    spdlog::error("config: {}", e.what());
    return kUsage;
  } catch (const ranpredict::SchemaError& e) {
    spdlog::error("parse: {}", e.what());
    return kParse;
  } catch (const ranpredict::DecodeError& e) {
    spdlog::error("parse: {}", e.what());
    return kParse;
  } catch (const ranpredict::DegenerateTargetError& e) {
    spdlog::error("data: {}", e.what());
    return kParse;
  } catch (const ranpredict::IoError& e) {
    spdlog::error("io: {}", e.what());
    return kIo;
  } catch (const ranpredict::UnsupportedModelError& e) {
    spdlog::error("unsupported: {}", e.what());
    return kUnsupported;
  } catch (const std::exception& e) {
    spdlog::error("internal: {}", e.what());
    return kInternal;
  }
}
