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
#include <random>
#include <string>
#include <vector>

#include "ranpredict/error.hpp"
#include "ranpredict/model.hpp"
#include "test_support.hpp"

namespace ranpredict {
namespace {

using testing_support::matrix;
using testing_support::target;

struct Data {
  FeatureMatrix x;
  TargetVector y;
};

Data training_data() {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < 400; ++i) {
    const double a = nd(gen), b = nd(gen) / 3, c = nd(gen) * 1e3;
    rows.push_back({a, b, c});
    y.push_back(a * b + std::sin(c / 500) + 0.1 * nd(gen) + 1.0 / 3.0);
  }
  return {matrix(rows), target(y)};
}

FeatureMatrix random_inputs(std::size_t n) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({nd(gen) * 2, nd(gen), nd(gen) * 2e3});
  return matrix(rows);
}

Model fit_small(ModelKind kind, const Data& d) {
  switch (kind) {
    case ModelKind::kLinear: return fit_linear(d.x, d.y);
    case ModelKind::kTree: return fit_tree(d.x, d.y, {6, 3});
    case ModelKind::kForest: {
      ForestParams p;
      p.n_trees = 10;
      return fit_forest(d.x, d.y, p);
    }
    case ModelKind::kXgbLike: {
      SecondOrderParams p;
      p.n_rounds = 20;
      return fit_boosted_second_order(d.x, d.y, p);
    }
    case ModelKind::kLgbmLike: {
      LeafwiseParams p;
      p.n_rounds = 20;
      p.base_score = 0.25;
      return fit_boosted_leafwise(d.x, d.y, p);
    }
  }
  return {};
}

class RoundTrip : public ::testing::TestWithParam<ModelKind> {};

TEST_P(RoundTrip, PredictionsIdentical) {
  const auto d = training_data();
  const Model m = fit_small(GetParam(), d);
  const std::string bytes = serialize_model(m);
  const Model back = deserialize_model(bytes);
  EXPECT_EQ(kind_of(back), GetParam());
  EXPECT_EQ(feature_names(back), feature_names(m));
  const auto probe = random_inputs(1000);
  EXPECT_EQ(predict(back, probe).values, predict(m, probe).values);
  EXPECT_EQ(serialize_model(back), bytes);
  EXPECT_EQ(serialize_model(m), bytes);
}

TEST_P(RoundTrip, TruncatedPayloadIsDecodeError) {
  const auto d = training_data();
  const std::string bytes = serialize_model(fit_small(GetParam(), d));
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, bytes.size() / 3, bytes.size() - 3}) {
    EXPECT_THROW(deserialize_model(bytes.substr(0, cut)), DecodeError) << "cut " << cut;
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, RoundTrip, ::testing::ValuesIn(kAllModelKinds),
                         [](const auto& info) { return std::string(model_kind_name(info.param)); });

TEST(ModelDecode, StepTreeRoundTrip) {
  const Model m = fit_tree(matrix({{0}, {1}, {2}, {3}}), target({0, 0, 10, 10}), {1, 1});
  const Model back = deserialize_model(serialize_model(m));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-2, 5);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 100; ++i) rows.push_back({u(gen)});
  EXPECT_EQ(predict(back, matrix(rows)).values, predict(m, matrix(rows)).values);
}

TEST(ModelDecode, RejectsBadPayloads) {
  const Model m = fit_tree(matrix({{0}, {1}, {2}, {3}}), target({0, 0, 10, 10}), {1, 1});
  const std::string good = serialize_model(m);
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    s.replace(pos, from.size(), to);
    return s;
  };
  EXPECT_THROW(deserialize_model(replace("\"version\":1", "\"version\":99")), DecodeError);
  EXPECT_THROW(deserialize_model(replace("\"kind\":\"tree\"", "\"kind\":\"svm\"")), DecodeError);
  EXPECT_THROW(deserialize_model(replace("ranpredict-model", "other-model")), DecodeError);
  EXPECT_THROW(deserialize_model(replace("\"left_child\":[1", "\"left_child\":[0")), DecodeError);
  EXPECT_THROW(deserialize_model("[]"), DecodeError);
  EXPECT_THROW(deserialize_model("not json"), DecodeError);
}

TEST(ModelKindNames, RoundTrip) {
  for (auto k : kAllModelKinds) EXPECT_EQ(parse_model_kind(model_kind_name(k)), k);
  EXPECT_THROW(parse_model_kind("svm"), ConfigError);
}

}  // namespace
}  // namespace ranpredict
