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

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ranpredict/boosting.hpp"
#include "ranpredict/dataset.hpp"
#include "ranpredict/forest.hpp"
#include "ranpredict/linear.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict {

enum class ModelKind { kLinear, kTree, kForest, kXgbLike, kLgbmLike };

inline constexpr std::array<ModelKind, 5> kAllModelKinds = {
    ModelKind::kLinear, ModelKind::kTree, ModelKind::kForest, ModelKind::kXgbLike,
    ModelKind::kLgbmLike};

// "linear", "tree", "forest", "xgb_like", "lgbm_like".
std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);  // throws ConfigError

using Model = std::variant<LinearModel, TreeModel, ForestModel, BoostedModel>;

ModelKind kind_of(const Model& model);
bool is_tree_based(const Model& model);
std::size_t n_features(const Model& model);
const std::vector<std::string>& feature_names(const Model& model);

// Throws DimensionError when x does not have the training column count.
TargetVector predict(const Model& model, const FeatureMatrix& x);

/// Versioned JSON encoding; see docs/model_format.md. Output is
/// deterministic and every double is written in shortest round-trip form,
/// so a decoded model predicts bit-identically to the original.
std::string serialize_model(const Model& model);

// Throws DecodeError on malformed JSON, an unknown format tag or version,
// or structurally invalid trees.
Model deserialize_model(std::string_view payload);

}  // namespace ranpredict
