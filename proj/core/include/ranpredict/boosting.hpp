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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ranpredict/dataset.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict {

// Depth-wise boosting with exact split enumeration (XGBoost-style).
struct SecondOrderParams {
  std::size_t n_rounds = 200;
  double learning_rate = 0.1;
  double lambda = 1.0;
  int max_depth = 6;
  std::size_t min_samples_leaf = 5;
  // Overrides the default base score of mean(y).
  std::optional<double> base_score;

  void validate() const;
};

// Best-first boosting over histogram bin boundaries (LightGBM-style).
struct LeafwiseParams {
  std::size_t n_rounds = 200;
  double learning_rate = 0.1;
  double lambda = 1.0;
  std::size_t num_leaves = 31;
  std::size_t n_bins = 64;
  std::size_t min_samples_leaf = 5;
  int max_depth = kUnboundedDepth;
  std::optional<double> base_score;

  void validate() const;
};

enum class BoostVariant { kSecondOrder, kHistogramLeafwise };

/// Squared-error gradient boosting ensemble.
///
/// prediction(x) = base_score + learning_rate * sum_b trees[b](x), where each
/// leaf stores the raw weight -G / (H + lambda) of the rows it received
/// during training.
struct BoostedModel {
  BoostVariant variant = BoostVariant::kSecondOrder;
  double base_score = 0.0;
  double learning_rate = 0.1;
  std::vector<Tree> trees;
  std::variant<SecondOrderParams, LeafwiseParams> params;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return feature_names.size(); }
  double lambda() const;
  double predict_row(std::span<const double> x) const;
  // Prediction using only the first n_trees trees.
  double predict_row(std::span<const double> x, std::size_t n_trees) const;
};

// Per round: g_i = pred_i - y_i, h_i = 1. A split is kept only when
// Gain = 1/2 [G_L^2/(H_L+l) + G_R^2/(H_R+l) - G^2/(H+l)] is positive.
BoostedModel fit_boosted_second_order(const FeatureMatrix& x, const TargetVector& y,
                                      const SecondOrderParams& params = {});

// Same gain and leaf weights, but candidate thresholds come from quantile
// bins and the tree grows by repeatedly splitting the leaf with the largest
// positive gain until num_leaves is reached.
BoostedModel fit_boosted_leafwise(const FeatureMatrix& x, const TargetVector& y,
                                  const LeafwiseParams& params = {});

TargetVector predict(const BoostedModel& model, const FeatureMatrix& x);

}  // namespace ranpredict
