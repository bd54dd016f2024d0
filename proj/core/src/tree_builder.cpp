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

#include "tree_builder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace ranpredict::detail {

double split_midpoint(double lo, double hi) {
  const double t = std::midpoint(lo, hi);
  return t < hi ? t : lo;
}

double stable_mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double pivot = v.front();
  double shifted = 0.0;
  for (double x : v) shifted += x - pivot;
  return pivot + shifted / static_cast<double>(v.size());
}

namespace {

struct NodeTask {
  std::size_t begin;
  std::size_t end;
  int depth;
  int parent;
  bool is_left;
};

struct SplitCandidate {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  std::size_t n_left = 0;
};

class ExactTreeBuilder {
 public:
  ExactTreeBuilder(const FeatureMatrix& x, std::span<const double> grad,
                   std::span<const double> hess, std::span<const std::size_t> sample_rows,
                   const ExactSplitConfig& config, Rng* rng)
      : x_(x), grad_(grad), hess_(hess), rows_(sample_rows), config_(config), rng_(rng) {
    const std::size_t p = x_.cols();
    const std::size_t n = rows_.size();
    order_.assign(p, std::vector<std::uint32_t>(n));
    for (std::size_t f = 0; f < p; ++f) {
      auto& ord = order_[f];
      std::iota(ord.begin(), ord.end(), std::uint32_t{0});
      // Ties keep slot order.
      std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return value(a, f) < value(b, f);
      });
    }
    goes_left_.assign(n, 0);
    scratch_.resize(n);
    feature_pool_.resize(p);
  }

  Tree build() {
    Tree tree;
    if (rows_.empty()) {
      tree.nodes.push_back(TreeNode{});
      return tree;
    }
    std::vector<NodeTask> stack{{0, rows_.size(), 0, -1, false}};
    while (!stack.empty()) {
      const NodeTask task = stack.back();
      stack.pop_back();
      const int index = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(make_node(task));
      if (task.parent >= 0) {
        auto& parent = tree.nodes[static_cast<std::size_t>(task.parent)];
        (task.is_left ? parent.left : parent.right) = index;
      }
      const SplitCandidate split = find_split(task);
      if (!split.found) continue;
      auto& node = tree.nodes[static_cast<std::size_t>(index)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.gain = split.gain;
      partition(task, split);
      const std::size_t mid = task.begin + split.n_left;
      // Right is pushed first so the left subtree is built (and numbered) first.
      stack.push_back({mid, task.end, task.depth + 1, index, false});
      stack.push_back({task.begin, mid, task.depth + 1, index, true});
    }
    return tree;
  }

 private:
  double value(std::uint32_t slot, std::size_t f) const { return x_(rows_[slot], f); }
  double g(std::uint32_t slot) const { return grad_[rows_[slot]]; }
  double h(std::uint32_t slot) const { return hess_[rows_[slot]]; }

  double score(double G, double H) const { return G * G / (H + config_.lambda); }

  TreeNode make_node(const NodeTask& task) {
    double G = 0.0;
    double H = 0.0;
    for (std::size_t i = task.begin; i < task.end; ++i) {
      const auto s = order_[0][i];
      G += g(s);
      H += h(s);
    }
    TreeNode node;
    node.n_samples = task.end - task.begin;
    if (config_.mean_targets != nullptr) {
      const auto& y = *config_.mean_targets;
      const double pivot = y[rows_[order_[0][task.begin]]];
      double shifted = 0.0;
      for (std::size_t i = task.begin; i < task.end; ++i) shifted += y[rows_[order_[0][i]]] - pivot;
      node.value = pivot + shifted / static_cast<double>(node.n_samples);
    } else {
      node.value = config_.value_sign * G / (H + config_.lambda) + config_.value_offset;
    }
    return node;
  }

  std::span<const std::size_t> candidate_features() {
    const std::size_t p = x_.cols();
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
    const std::size_t k = config_.features_per_node;
    if (k == 0 || k >= p || rng_ == nullptr) return feature_pool_;
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_->uniform_index(p - i));
      std::swap(feature_pool_[i], feature_pool_[j]);
    }
    std::sort(feature_pool_.begin(), feature_pool_.begin() + static_cast<std::ptrdiff_t>(k));
    return {feature_pool_.data(), k};
  }

  SplitCandidate find_split(const NodeTask& task) {
    SplitCandidate best;
    const std::size_t n = task.end - task.begin;
    const std::size_t min_leaf = std::max<std::size_t>(config_.min_samples_leaf, 1);
    if (config_.max_depth >= 0 && task.depth >= config_.max_depth) return best;
    if (n < 2 * min_leaf) return best;

    double G = 0.0, H = 0.0, scale = 0.0;
    double g_min = g(order_[0][task.begin]);
    double g_max = g_min;
    for (std::size_t i = task.begin; i < task.end; ++i) {
      const auto s = order_[0][i];
      G += g(s);
      H += h(s);
      scale += g(s) * g(s) / h(s);
      g_min = std::min(g_min, g(s));
      g_max = std::max(g_max, g(s));
    }
    if (g_min == g_max) return best;  // pure node

    const double parent_score = score(G, H);
    const double tol = kGainTolerance * scale;
    // Features are drawn only for nodes that may split.
    for (std::size_t f : candidate_features()) {
      const auto& ord = order_[f];
      double GL = 0.0, HL = 0.0;
      for (std::size_t i = task.begin; i + 1 < task.end; ++i) {
        GL += g(ord[i]);
        HL += h(ord[i]);
        const std::size_t n_left = i - task.begin + 1;
        const std::size_t n_right = n - n_left;
        if (n_right < min_leaf) break;
        if (n_left < min_leaf) continue;
        const double v = value(ord[i], f);
        const double v_next = value(ord[i + 1], f);
        if (!(v < v_next)) continue;
        const double gain = config_.gain_factor *
                            (score(GL, HL) + score(G - GL, H - HL) - parent_score);
        if (!best.found || gain > best.gain + tol) {
          best.found = true;
          best.feature = static_cast<int>(f);
          best.threshold = split_midpoint(v, v_next);
          best.gain = gain;
          best.n_left = n_left;
        }
      }
    }
    if (best.found && !(best.gain > tol)) best.found = false;
    return best;
  }

  void partition(const NodeTask& task, const SplitCandidate& split) {
    const auto& chosen = order_[static_cast<std::size_t>(split.feature)];
    for (std::size_t i = task.begin; i < task.end; ++i) {
      goes_left_[chosen[i]] = (i - task.begin) < split.n_left ? 1 : 0;
    }
    for (auto& ord : order_) {
      auto first = ord.begin() + static_cast<std::ptrdiff_t>(task.begin);
      auto last = ord.begin() + static_cast<std::ptrdiff_t>(task.end);
      auto out_left = first;
      auto out_right = scratch_.begin();
      for (auto it = first; it != last; ++it) {
        if (goes_left_[*it]) {
          *out_left++ = *it;
        } else {
          *out_right++ = *it;
        }
      }
      std::copy(scratch_.begin(), out_right, out_left);
    }
  }

  const FeatureMatrix& x_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  std::span<const std::size_t> rows_;
  const ExactSplitConfig& config_;
  Rng* rng_;

  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<char> goes_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> feature_pool_;
};

}  // namespace

Tree build_exact_tree(const FeatureMatrix& x, std::span<const double> grad,
                      std::span<const double> hess, std::span<const std::size_t> sample_rows,
                      const ExactSplitConfig& config, Rng* rng) {
  ExactTreeBuilder builder(x, grad, hess, sample_rows, config, rng);
  return builder.build();
}

}  // namespace ranpredict::detail
