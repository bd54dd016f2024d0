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
#include <span>
#include <string>
#include <vector>

#include "ranpredict/dataset.hpp"

namespace ranpredict {

inline constexpr int kUnboundedDepth = -1;

/// Flat binary-tree node. Internal nodes route x[feature] <= threshold to
/// `left`, everything else to `right`. `value` is the node's prediction
/// (region mean for CART trees, raw leaf weight for boosted trees) and is
/// kept on internal nodes too. `gain` is the criterion reduction of the
/// split, zero on leaves.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  std::size_t n_samples = 0;
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
};

/// Nodes are stored in creation order, so children always have larger
/// indices than their parent and node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const;
  // Index of the leaf that x is routed to.
  std::size_t leaf_index(std::span<const double> x) const;

  std::size_t leaf_count() const;
  std::size_t split_count() const;
  int depth() const;
};

struct TreeParams {
  int max_depth = 8;  // kUnboundedDepth for no limit
  std::size_t min_samples_leaf = 5;

  void validate() const;
};

struct TreeModel {
  Tree tree;
  TreeParams params;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return feature_names.size(); }
  double predict_row(std::span<const double> x) const { return tree.predict(x); }
};

/// CART regression tree. Each node scans every feature and every midpoint
/// between consecutive distinct values and takes the split with the lowest
/// summed squared error of the two children. Growth stops at max_depth, on a
/// pure node, when the node has fewer than 2 * min_samples_leaf rows, or when
/// no split lowers the error. Ties go to the lowest feature index, then the
/// lowest threshold.
TreeModel fit_tree(const FeatureMatrix& x, const TargetVector& y, const TreeParams& params = {});

TargetVector predict(const TreeModel& model, const FeatureMatrix& x);

}  // namespace ranpredict
