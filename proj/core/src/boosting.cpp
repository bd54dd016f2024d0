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

#include "ranpredict/boosting.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "ranpredict/error.hpp"
#include "ranpredict/histogram.hpp"
#include "tree_builder.hpp"

namespace ranpredict {

namespace {

void validate_common(double learning_rate, double lambda, std::size_t min_samples_leaf,
                     const char* who) {
  const std::string prefix(who);
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ConfigError(prefix + ": learning_rate must lie in (0, 1]");
  }
  if (!(lambda >= 0.0)) throw ConfigError(prefix + ": lambda must be >= 0");
  if (min_samples_leaf < 1) throw ConfigError(prefix + ": min_samples_leaf must be >= 1");
}

void check_training_input(const FeatureMatrix& x, const TargetVector& y, const char* who) {
  if (x.rows() == 0) throw ConfigError(std::string(who) + ": no training rows");
  if (x.rows() != y.size()) throw DimensionError(std::string(who) + ": X rows and y length differ");
}

// Shared boosting loop; grow(grad, hess) returns the next tree.
template <typename GrowTree>
void run_rounds(const FeatureMatrix& x, const TargetVector& y, std::size_t n_rounds,
                BoostedModel& model, GrowTree&& grow) {
  const std::size_t n = x.rows();
  std::vector<double> pred(n, model.base_score);
  std::vector<double> grad(n);
  const std::vector<double> hess(n, 1.0);
  model.trees.reserve(n_rounds);
  for (std::size_t round = 0; round < n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - y.values[i];
    Tree tree = grow(std::span<const double>(grad), std::span<const double>(hess));
    for (std::size_t i = 0; i < n; ++i) pred[i] += model.learning_rate * tree.predict(x.row(i));
    model.trees.push_back(std::move(tree));
  }
}

struct LeafSplit {
  bool found = false;
  int feature = -1;
  std::size_t left_last_bin = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

struct Leaf {
  int node = 0;
  int depth = 0;
  std::vector<std::uint32_t> rows;
  LeafSplit best;
};

class LeafwiseTreeBuilder {
 public:
  LeafwiseTreeBuilder(const FeatureMatrix& x, const LeafwiseParams& params)
      : params_(params), layouts_(x.cols()), bins_(x.cols()) {
    for (std::size_t f = 0; f < x.cols(); ++f) {
      const auto column = x.column(f);
      layouts_[f] = make_bin_layout(column, params.n_bins);
      bins_[f].resize(column.size());
      for (std::size_t r = 0; r < column.size(); ++r) {
        bins_[f][r] = static_cast<std::uint32_t>(layouts_[f].bin_of(column[r]));
      }
    }
  }

  Tree build(std::span<const double> g, std::span<const double> h) {
    g_ = g;
    h_ = h;
    Tree tree;
    std::vector<Leaf> leaves(1);
    leaves[0].rows.resize(g.size());
    std::iota(leaves[0].rows.begin(), leaves[0].rows.end(), std::uint32_t{0});
    tree.nodes.push_back(make_node(leaves[0].rows));
    leaves[0].best = best_split(leaves[0]);

    while (leaves.size() < params_.num_leaves) {
      std::size_t pick = leaves.size();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].best.found) continue;
        if (pick == leaves.size() || leaves[i].best.gain > leaves[pick].best.gain) pick = i;
      }
      if (pick == leaves.size()) break;

      Leaf parent = std::move(leaves[pick]);
      const auto f = static_cast<std::size_t>(parent.best.feature);
      Leaf left, right;
      left.depth = right.depth = parent.depth + 1;
      for (auto r : parent.rows) {
        (bins_[f][r] <= parent.best.left_last_bin ? left.rows : right.rows).push_back(r);
      }
      left.node = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(make_node(left.rows));
      right.node = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(make_node(right.rows));
      auto& pn = tree.nodes[static_cast<std::size_t>(parent.node)];
      pn.feature = parent.best.feature;
      pn.threshold = parent.best.threshold;
      pn.gain = parent.best.gain;
      pn.left = left.node;
      pn.right = right.node;

      left.best = best_split(left);
      right.best = best_split(right);
      leaves[pick] = std::move(left);
      leaves.push_back(std::move(right));
    }
    return tree;
  }

 private:
  TreeNode make_node(const std::vector<std::uint32_t>& rows) const {
    double G = 0.0, H = 0.0;
    for (auto r : rows) {
      G += g_[r];
      H += h_[r];
    }
    TreeNode node;
    node.n_samples = rows.size();
    node.value = -G / (H + params_.lambda);
    return node;
  }

  double score(double G, double H) const { return G * G / (H + params_.lambda); }

  LeafSplit best_split(const Leaf& leaf) {
    LeafSplit best;
    const std::size_t n = leaf.rows.size();
    const std::size_t min_leaf = params_.min_samples_leaf;
    if (params_.max_depth >= 0 && leaf.depth >= params_.max_depth) return best;
    if (n < 2 * min_leaf) return best;

    double G = 0.0, H = 0.0, scale = 0.0;
    double g_min = g_[leaf.rows.front()];
    double g_max = g_min;
    for (auto r : leaf.rows) {
      G += g_[r];
      H += h_[r];
      scale += g_[r] * g_[r] / h_[r];
      g_min = std::min(g_min, g_[r]);
      g_max = std::max(g_max, g_[r]);
    }
    if (g_min == g_max) return best;

    const double parent_score = score(G, H);
    const double tol = detail::kGainTolerance * scale;
    for (std::size_t f = 0; f < layouts_.size(); ++f) {
      const auto& layout = layouts_[f];
      const std::size_t nb = layout.n_bins();
      count_.assign(nb, 0);
      sum_g_.assign(nb, 0.0);
      sum_h_.assign(nb, 0.0);
      for (auto r : leaf.rows) {
        const auto b = bins_[f][r];
        ++count_[b];
        sum_g_[b] += g_[r];
        sum_h_[b] += h_[r];
      }

      std::size_t n_left = 0;
      double GL = 0.0, HL = 0.0;
      bool have_left = false;
      std::size_t prev = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        if (count_[b] == 0) continue;
        if (have_left) {
          const std::size_t n_right = n - n_left;
          if (n_right < min_leaf) break;
          if (n_left >= min_leaf) {
            const double gain =
                0.5 * (score(GL, HL) + score(G - GL, H - HL) - parent_score);
            if (!best.found || gain > best.gain + tol) {
              best.found = true;
              best.feature = static_cast<int>(f);
              best.left_last_bin = prev;
              best.threshold = detail::split_midpoint(layout.upper[prev], layout.lower[b]);
              best.gain = gain;
            }
          }
        }
        n_left += count_[b];
        GL += sum_g_[b];
        HL += sum_h_[b];
        prev = b;
        have_left = true;
      }
    }
    if (best.found && !(best.gain > tol)) best.found = false;
    return best;
  }

  const LeafwiseParams& params_;
  std::vector<BinLayout> layouts_;
  std::vector<std::vector<std::uint32_t>> bins_;
  std::span<const double> g_;
  std::span<const double> h_;
  std::vector<std::size_t> count_;
  std::vector<double> sum_g_;
  std::vector<double> sum_h_;
};

}  // namespace

void SecondOrderParams::validate() const {
  validate_common(learning_rate, lambda, min_samples_leaf, "xgb_like");
  if (max_depth < kUnboundedDepth) throw ConfigError("xgb_like: max_depth must be >= -1");
}

void LeafwiseParams::validate() const {
  validate_common(learning_rate, lambda, min_samples_leaf, "lgbm_like");
  if (num_leaves < 2) throw ConfigError("lgbm_like: num_leaves must be >= 2");
  if (n_bins < 2) throw ConfigError("lgbm_like: n_bins must be >= 2");
  if (max_depth < kUnboundedDepth) throw ConfigError("lgbm_like: max_depth must be >= -1");
}

double BoostedModel::lambda() const {
  return std::visit([](const auto& p) { return p.lambda; }, params);
}

double BoostedModel::predict_row(std::span<const double> x) const {
  return predict_row(x, trees.size());
}

double BoostedModel::predict_row(std::span<const double> x, std::size_t n_trees) const {
  double acc = base_score;
  const std::size_t limit = std::min(n_trees, trees.size());
  for (std::size_t b = 0; b < limit; ++b) acc += learning_rate * trees[b].predict(x);
  return acc;
}

BoostedModel fit_boosted_second_order(const FeatureMatrix& x, const TargetVector& y,
                                      const SecondOrderParams& params) {
  params.validate();
  check_training_input(x, y, "xgb_like");

  BoostedModel model;
  model.variant = BoostVariant::kSecondOrder;
  model.base_score = params.base_score.value_or(detail::stable_mean(y.values));
  model.learning_rate = params.learning_rate;
  model.params = params;
  model.feature_names = x.column_names();

  detail::ExactSplitConfig cfg;
  cfg.max_depth = params.max_depth;
  cfg.min_samples_leaf = params.min_samples_leaf;
  cfg.lambda = params.lambda;
  cfg.gain_factor = 0.5;
  cfg.value_sign = -1.0;
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});

  run_rounds(x, y, params.n_rounds, model,
             [&](std::span<const double> g, std::span<const double> h) {
               return detail::build_exact_tree(x, g, h, rows, cfg, nullptr);
             });
  return model;
}

BoostedModel fit_boosted_leafwise(const FeatureMatrix& x, const TargetVector& y,
                                  const LeafwiseParams& params) {
  params.validate();
  check_training_input(x, y, "lgbm_like");

  BoostedModel model;
  model.variant = BoostVariant::kHistogramLeafwise;
  model.base_score = params.base_score.value_or(detail::stable_mean(y.values));
  model.learning_rate = params.learning_rate;
  model.params = params;
  model.feature_names = x.column_names();

  LeafwiseTreeBuilder builder(x, params);
  run_rounds(x, y, params.n_rounds, model,
             [&](std::span<const double> g, std::span<const double> h) {
               return builder.build(g, h);
             });
  return model;
}

TargetVector predict(const BoostedModel& model, const FeatureMatrix& x) {
  if (x.cols() != model.n_features()) {
    throw DimensionError("predict: model expects " + std::to_string(model.n_features()) +
                         " features, got " + std::to_string(x.cols()));
  }
  TargetVector out{"prediction", std::vector<double>(x.rows())};
  for (std::size_t r = 0; r < x.rows(); ++r) out.values[r] = model.predict_row(x.row(r));
  return out;
}

}  // namespace ranpredict
