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

#include "ranpredict/tree.hpp"

#include <algorithm>
#include <numeric>

#include "ranpredict/error.hpp"
#include "tree_builder.hpp"

namespace ranpredict {

std::size_t Tree::leaf_index(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                      : n.right);
  }
  return i;
}

double Tree::predict(std::span<const double> x) const { return nodes[leaf_index(x)].value; }

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t Tree::split_count() const { return nodes.size() - leaf_count(); }

int Tree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> d(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

void TreeParams::validate() const {
  if (max_depth < kUnboundedDepth) throw ConfigError("tree: max_depth must be >= -1");
  if (min_samples_leaf < 1) throw ConfigError("tree: min_samples_leaf must be >= 1");
}

TreeModel fit_tree(const FeatureMatrix& x, const TargetVector& y, const TreeParams& params) {
  params.validate();
  if (x.rows() == 0) throw ConfigError("fit_tree: no training rows");
  if (x.rows() != y.size()) throw DimensionError("fit_tree: X rows and y length differ");

  // Split search runs on centred targets.
  const double offset = detail::stable_mean(y.values);
  std::vector<double> grad(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) grad[i] = y.values[i] - offset;
  const std::vector<double> hess(y.size(), 1.0);
  std::vector<std::size_t> rows(y.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});

  detail::ExactSplitConfig cfg;
  cfg.max_depth = params.max_depth;
  cfg.min_samples_leaf = params.min_samples_leaf;
  cfg.value_offset = offset;
  cfg.mean_targets = &y.values;

  TreeModel model;
  model.tree = detail::build_exact_tree(x, grad, hess, rows, cfg, nullptr);
  model.params = params;
  model.feature_names = x.column_names();
  return model;
}

TargetVector predict(const TreeModel& model, const FeatureMatrix& x) {
  if (x.cols() != model.n_features()) {
    throw DimensionError("predict: model expects " + std::to_string(model.n_features()) +
                         " features, got " + std::to_string(x.cols()));
  }
  TargetVector out{"prediction", std::vector<double>(x.rows())};
  for (std::size_t r = 0; r < x.rows(); ++r) out.values[r] = model.predict_row(x.row(r));
  return out;
}

}  // namespace ranpredict
