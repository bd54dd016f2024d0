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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "ranpredict/dataset.hpp"
#include "ranpredict/error.hpp"
#include "test_support.hpp"

namespace ranpredict {
namespace {

using testing_support::matrix;
using testing_support::target;

MetricRecord sample_record() {
  MetricRecord r;
  r.timestamp_ms = 1;
  r.ue_id = 1;
  r.tti = 10;
  r.mcs = 22;
  r.snr_db = 18.5;
  r.bler = 0.02;
  r.brate_kbps = 4500;
  return r;
}

TEST(BuildTask, BrateColumns) {
  const auto task = build_task({sample_record()}, TaskSpec::defaults(Target::kBrate));
  EXPECT_EQ(task.x.cols(), 4u);
  const auto row = task.x.row(0);
  EXPECT_EQ(std::vector<double>(row.begin(), row.end()), (std::vector<double>{0.02, 10, 22, 18.5}));
  EXPECT_EQ(task.y.values, std::vector<double>{4500});
}

TEST(BuildTask, SnrColumns) {
  const auto task = build_task({sample_record()}, TaskSpec::defaults(Target::kSnr));
  const auto row = task.x.row(0);
  EXPECT_EQ(std::vector<double>(row.begin(), row.end()), (std::vector<double>{4500, 10, 22, 0.02}));
  EXPECT_EQ(task.y.values, std::vector<double>{18.5});
}

TEST(BuildTask, EmptyRecordsRejected) {
  EXPECT_THROW(build_task({}, TaskSpec::defaults(Target::kBrate)), ConfigError);
}

TEST(BuildTask, UnknownFeatureRejected) {
  TaskSpec spec = TaskSpec::defaults(Target::kBrate);
  spec.features.push_back("rsrp");
  EXPECT_THROW(build_task({sample_record()}, spec), ConfigError);
}

TEST(BuildTask, TargetAsFeatureRejected) {
  TaskSpec spec = TaskSpec::defaults(Target::kSnr);
  spec.features.push_back("snr");
  EXPECT_THROW(spec.validate(), ConfigError);
}

TEST(BuildTask, CqiAliasesSnr) {
  TaskSpec spec{Target::kBrate, {"cqi"}};
  const auto task = build_task({sample_record()}, spec);
  EXPECT_EQ(task.x(0, 0), 18.5);
  EXPECT_EQ(parse_target("cqi"), Target::kSnr);
}

TEST(FeatureMatrix, RejectsNonFinite) {
  EXPECT_THROW(matrix({{1.0}, {NAN}}), ConfigError);
}

FeatureMatrix iota_matrix(std::size_t n) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({static_cast<double>(i)});
  return matrix(rows);
}

TargetVector iota_target(std::size_t n) {
  std::vector<double> v(n);
  std::iota(v.begin(), v.end(), 0.0);
  return target(v);
}

TEST(SplitTrainTest, EightyTwenty) {
  const auto s = split_train_test(iota_matrix(10), iota_target(10), 0.8, 42);
  EXPECT_EQ(s.x_train.rows(), 8u);
  EXPECT_EQ(s.x_test.rows(), 2u);
  EXPECT_EQ(s.y_train.size(), 8u);
  EXPECT_EQ(s.y_test.size(), 2u);
}

TEST(SplitTrainTest, FloorRule) {
  const auto s = split_train_test(iota_matrix(5), iota_target(5), 0.5, 1);
  EXPECT_EQ(s.x_train.rows(), 2u);
  EXPECT_EQ(s.x_test.rows(), 3u);
}

TEST(SplitTrainTest, DeterministicAndAligned) {
  const auto a = split_train_test(iota_matrix(50), iota_target(50), 0.8, 7);
  const auto b = split_train_test(iota_matrix(50), iota_target(50), 0.8, 7);
  EXPECT_EQ(a.train_rows, b.train_rows);
  EXPECT_EQ(a.test_rows, b.test_rows);
  for (std::size_t i = 0; i < a.x_train.rows(); ++i) EXPECT_EQ(a.x_train(i, 0), a.y_train.values[i]);
  for (std::size_t i = 0; i < a.x_test.rows(); ++i) EXPECT_EQ(a.x_test(i, 0), a.y_test.values[i]);
  std::set<std::size_t> all(a.train_rows.begin(), a.train_rows.end());
  all.insert(a.test_rows.begin(), a.test_rows.end());
  EXPECT_EQ(all.size(), 50u);
}

TEST(SplitTrainTest, DifferentSeedsDiffer) {
  const auto a = split_train_test(iota_matrix(20), iota_target(20), 0.8, 1);
  const auto b = split_train_test(iota_matrix(20), iota_target(20), 0.8, 2);
  EXPECT_NE(a.train_rows, b.train_rows);
}

TEST(SplitTrainTest, TemporalKeepsOrder) {
  const auto s = split_train_test(iota_matrix(10), iota_target(10), 0.7, 99, SplitMode::kTemporal);
  EXPECT_EQ(s.train_rows, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(s.test_rows, (std::vector<std::size_t>{7, 8, 9}));
}

TEST(SplitTrainTest, Errors) {
  EXPECT_THROW(split_train_test(iota_matrix(1), iota_target(1), 0.8, 1), ConfigError);
  EXPECT_THROW(split_train_test(iota_matrix(10), iota_target(10), 1.0, 1), ConfigError);
  EXPECT_THROW(split_train_test(iota_matrix(10), iota_target(10), 0.0, 1), ConfigError);
  // floor(0.05 * 10) = 0 training rows.
  EXPECT_THROW(split_train_test(iota_matrix(10), iota_target(10), 0.05, 1), ConfigError);
}

TEST(Scaler, MeanAndPopulationStd) {
  const auto s = fit_scaler(matrix({{1, 5}, {2, 5}, {3, 5}}));
  EXPECT_DOUBLE_EQ(s.means[0], 2.0);
  EXPECT_NEAR(s.stds[0], std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.stds[0], 0.816497, 1e-6);
  EXPECT_EQ(s.means[1], 5.0);
  EXPECT_EQ(s.stds[1], 0.0);
}

TEST(Scaler, ColumnsIndependent) {
  const auto both = fit_scaler(matrix({{1, 10}, {2, 40}, {3, 70}}));
  const auto only = fit_scaler(matrix({{1}, {2}, {3}}));
  EXPECT_EQ(both.means[0], only.means[0]);
  EXPECT_EQ(both.stds[0], only.stds[0]);
}

TEST(Scaler, TransformValues) {
  const auto s = fit_scaler(matrix({{1, 5}, {2, 5}, {3, 5}}));
  const auto t = transform(s, matrix({{3, 123}, {2, -7}}));
  EXPECT_NEAR(t(0, 0), 1.0 / std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(t(0, 0), 1.224745, 1e-6);
  EXPECT_EQ(t(1, 0), 0.0);
  EXPECT_EQ(t(0, 1), 0.0);
  EXPECT_EQ(t(1, 1), 0.0);
}

TEST(Scaler, ColumnMismatchRejected) {
  const auto s = fit_scaler(matrix({{1, 5}, {2, 5}}));
  EXPECT_THROW(transform(s, matrix({{1}})), DimensionError);
}

TEST(Scaler, StandardizesTrainingColumns) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1000; ++i) {
    rows.push_back({1e6 + i * 0.37, std::sin(i) * 1e-3, static_cast<double>(i % 29), 7.0});
  }
  const auto x = matrix(rows);
  const auto t = transform(fit_scaler(x), x);
  for (std::size_t c = 0; c < t.cols(); ++c) {
    const auto col = t.column(c);
    const double m = std::accumulate(col.begin(), col.end(), 0.0) / col.size();
    double v = 0;
    for (double z : col) v += (z - m) * (z - m);
    EXPECT_LT(std::abs(m), 1e-10);
    if (c < 3) EXPECT_LT(std::abs(std::sqrt(v / col.size()) - 1.0), 1e-10);
  }
}

TEST(Scaler, FitsOnTrainingRowsOnly) {
  const auto split = split_train_test(iota_matrix(100), iota_target(100), 0.8, 3);
  const auto train_only = fit_scaler(split.x_train);
  const auto everything = fit_scaler(iota_matrix(100));
  EXPECT_NE(train_only.means[0], everything.means[0]);
}

TEST(Scaler, SerializationRoundTrip) {
  const auto s = fit_scaler(matrix({{1, 5, 0.1}, {2, 5, 0.7}, {3.25, 5, 1e-9}}));
  const auto back = deserialize_scaler(serialize_scaler(s));
  EXPECT_EQ(back.columns, s.columns);
  EXPECT_EQ(back.means, s.means);
  EXPECT_EQ(back.stds, s.stds);
  EXPECT_THROW(deserialize_scaler("{\"format\":"), DecodeError);
}

}  // namespace
}  // namespace ranpredict
