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
#include <vector>

#include "ranpredict/boosting.hpp"
#include "ranpredict/error.hpp"
#include "ranpredict/metrics.hpp"
#include "test_support.hpp"

namespace ranpredict {
namespace {

using testing_support::matrix;
using testing_support::target;

struct Fixture {
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
};

Fixture wavy(std::size_t n, std::uint64_t seed, int levels = 0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Fixture f;
  for (std::size_t i = 0; i < n; ++i) {
    double a = nd(gen) * 2, b = nd(gen);
    if (levels > 0) {
      a = std::round(a * levels) / levels;
      b = std::round(b * levels) / levels;
    }
    f.rows.push_back({a, b});
    f.y.push_back(3 * std::sin(a) + b * b + 0.5 * nd(gen));
  }
  return f;
}

// Recompute every leaf weight from the rows routed to it at its round.
void expect_closed_form_leaves(const BoostedModel& m, const Fixture& f) {
  const auto x = matrix(f.rows);
  std::vector<double> pred(f.y.size(), m.base_score);
  for (std::size_t t = 0; t < m.trees.size(); ++t) {
    const Tree& tree = m.trees[t];
    std::vector<long double> g(tree.nodes.size(), 0.0L), h(tree.nodes.size(), 0.0L);
    for (std::size_t i = 0; i < f.y.size(); ++i) {
      const auto leaf = tree.leaf_index(x.row(i));
      g[leaf] += pred[i] - f.y[i];
      h[leaf] += 1.0L;
    }
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      if (!tree.nodes[k].is_leaf()) continue;
      const long double w = -g[k] / (h[k] + m.lambda());
      EXPECT_NEAR(tree.nodes[k].value, static_cast<double>(w), 1e-9) << "tree " << t;
    }
    for (std::size_t i = 0; i < f.y.size(); ++i) {
      pred[i] += m.learning_rate * tree.predict(x.row(i));
    }
  }
}

void expect_monotone_loss(const BoostedModel& m, const Fixture& f) {
  const auto x = matrix(f.rows);
  double prev = INFINITY;
  for (std::size_t t = 0; t <= m.trees.size(); ++t) {
    double sse = 0;
    for (std::size_t i = 0; i < f.y.size(); ++i) {
      const double r = f.y[i] - m.predict_row(x.row(i), t);
      sse += r * r;
    }
    const double loss = sse / f.y.size();
    EXPECT_LE(loss, prev * (1 + 1e-12)) << "round " << t;
    prev = loss;
  }
}

TEST(SecondOrder, SingleLeafWeightIsMean) {
  SecondOrderParams p;
  p.n_rounds = 1;
  p.learning_rate = 1.0;
  p.lambda = 0.0;
  p.max_depth = 0;
  p.base_score = 0.0;
  const std::vector<double> y{1, 4, 9, 16, 25};
  const auto m = fit_boosted_second_order(matrix({{1}, {2}, {3}, {4}, {5}}), target(y), p);
  ASSERT_EQ(m.trees.size(), 1u);
  ASSERT_EQ(m.trees[0].nodes.size(), 1u);
  // w = -sum(0 - y_i) / n
  double s = 0;
  for (double v : y) s += v;
  EXPECT_NEAR(m.trees[0].nodes[0].value, s / 5, 1e-12);
}

TEST(SecondOrder, HugeLambdaShrinksToBase) {
  SecondOrderParams p;
  p.n_rounds = 5;
  p.lambda = 1e300;
  p.min_samples_leaf = 1;
  const auto f = wavy(200, 1);
  const auto m = fit_boosted_second_order(matrix(f.rows), target(f.y), p);
  for (const auto& t : m.trees)
    for (const auto& n : t.nodes)
      if (n.is_leaf()) EXPECT_LT(std::abs(n.value), 1e-290);
  for (double v : predict(m, matrix(f.rows)).values) EXPECT_NEAR(v, m.base_score, 1e-12);
}

TEST(SecondOrder, TwoRoundStepFixture) {
  SecondOrderParams p;
  p.n_rounds = 2;
  p.learning_rate = 1.0;
  p.lambda = 0.0;
  p.max_depth = 1;
  p.min_samples_leaf = 1;
  const auto x = matrix({{0}, {1}, {2}, {3}});
  const auto m = fit_boosted_second_order(x, target({0, 0, 10, 10}), p);
  EXPECT_EQ(m.base_score, 5.0);

  // g = [5, 5, -5, -5], h = 1. Candidate gains by hand:
  //   t=0.5: 0.5 * (25/1 + 25/3 - 0) = 16.67
  //   t=1.5: 0.5 * (100/2 + 100/2 - 0) = 50
  //   t=2.5: 0.5 * (25/3 + 25/1 - 0) = 16.67
  const auto& root = m.trees.at(0).nodes.at(0);
  EXPECT_EQ(root.feature, 0);
  EXPECT_EQ(root.threshold, 1.5);
  EXPECT_NEAR(root.gain, 50.0, 1e-12);
  EXPECT_EQ(m.trees[0].nodes.at(root.left).value, -5.0);
  EXPECT_EQ(m.trees[0].nodes.at(root.right).value, 5.0);
  for (std::size_t t = 1; t <= 2; ++t) {
    EXPECT_EQ(m.predict_row(x.row(0), t), 0.0);
    EXPECT_EQ(m.predict_row(x.row(1), t), 0.0);
    EXPECT_EQ(m.predict_row(x.row(2), t), 10.0);
    EXPECT_EQ(m.predict_row(x.row(3), t), 10.0);
  }
}

TEST(SecondOrder, ClosedFormLeavesAndMonotoneLoss) {
  const auto f = wavy(600, 2);
  SecondOrderParams p;
  p.n_rounds = 60;
  p.max_depth = 4;
  const auto m = fit_boosted_second_order(matrix(f.rows), target(f.y), p);
  EXPECT_EQ(m.trees.size(), 60u);
  expect_closed_form_leaves(m, f);
  expect_monotone_loss(m, f);
}

TEST(Leafwise, ClosedFormLeavesAndMonotoneLoss) {
  const auto f = wavy(600, 3);
  LeafwiseParams p;
  p.n_rounds = 60;
  p.num_leaves = 12;
  p.n_bins = 16;
  const auto m = fit_boosted_leafwise(matrix(f.rows), target(f.y), p);
  EXPECT_EQ(m.variant, BoostVariant::kHistogramLeafwise);
  for (const auto& t : m.trees) EXPECT_LE(t.leaf_count(), 12u);
  expect_closed_form_leaves(m, f);
  expect_monotone_loss(m, f);
}

TEST(Leafwise, TwoLeavesMatchDepthOneExact) {
  const auto f = wavy(30, 4, 2);
  LeafwiseParams lp;
  lp.n_rounds = 10;
  lp.num_leaves = 2;
  lp.n_bins = 255;
  lp.min_samples_leaf = 2;
  SecondOrderParams sp;
  sp.n_rounds = 10;
  sp.max_depth = 1;
  sp.min_samples_leaf = 2;
  const auto a = fit_boosted_leafwise(matrix(f.rows), target(f.y), lp);
  const auto b = fit_boosted_second_order(matrix(f.rows), target(f.y), sp);
  ASSERT_EQ(a.trees.size(), b.trees.size());
  for (std::size_t t = 0; t < a.trees.size(); ++t) {
    ASSERT_EQ(a.trees[t].nodes.size(), b.trees[t].nodes.size());
    for (std::size_t k = 0; k < a.trees[t].nodes.size(); ++k) {
      EXPECT_EQ(a.trees[t].nodes[k].feature, b.trees[t].nodes[k].feature);
      EXPECT_EQ(a.trees[t].nodes[k].threshold, b.trees[t].nodes[k].threshold);
      EXPECT_NEAR(a.trees[t].nodes[k].value, b.trees[t].nodes[k].value, 1e-12);
    }
  }
}

TEST(Leafwise, MatchesExactWhenBinsCoverValues) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = wavy(5 + gen() % 26, 100 + trial, trial % 3 + 1);
    const int depth = 1 + static_cast<int>(gen() % 3);
    LeafwiseParams lp;
    lp.n_rounds = 8;
    lp.num_leaves = std::size_t{1} << depth;
    lp.max_depth = depth;
    lp.n_bins = 64;
    lp.min_samples_leaf = 1;
    SecondOrderParams sp;
    sp.n_rounds = 8;
    sp.max_depth = depth;
    sp.min_samples_leaf = 1;
    const auto a = fit_boosted_leafwise(matrix(f.rows), target(f.y), lp);
    const auto b = fit_boosted_second_order(matrix(f.rows), target(f.y), sp);
    const auto probe = wavy(40, 900 + trial);
    const auto pa = predict(a, matrix(probe.rows)).values;
    const auto pb = predict(b, matrix(probe.rows)).values;
    for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_NEAR(pa[i], pb[i], 1e-9) << "trial " << trial;
  }
}

TEST(Leafwise, ConstantTargetPredictsBase) {
  const auto f = wavy(100, 5);
  const auto m = fit_boosted_leafwise(matrix(f.rows), target(std::vector<double>(100, -2.5)));
  for (const auto& t : m.trees) {
    EXPECT_EQ(t.nodes.size(), 1u);
    EXPECT_EQ(t.nodes[0].value, 0.0);
  }
  for (double v : predict(m, matrix(f.rows)).values) EXPECT_EQ(v, -2.5);
}

TEST(Boosting, Validation) {
  SecondOrderParams s;
  s.learning_rate = 0.0;
  EXPECT_THROW(s.validate(), ConfigError);
  s.learning_rate = 1.5;
  EXPECT_THROW(s.validate(), ConfigError);
  SecondOrderParams neg;
  neg.lambda = -1.0;
  EXPECT_THROW(neg.validate(), ConfigError);
  LeafwiseParams l;
  l.num_leaves = 1;
  EXPECT_THROW(l.validate(), ConfigError);
}

}  // namespace
}  // namespace ranpredict
