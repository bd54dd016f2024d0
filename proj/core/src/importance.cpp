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

#include "ranpredict/importance.hpp"

#include <algorithm>

#include "ranpredict/error.hpp"

namespace ranpredict {

namespace {

ImportanceReport accumulate(const std::vector<std::string>& names, const std::vector<Tree>& trees) {
  ImportanceReport report;
  report.features.resize(names.size());
  for (std::size_t f = 0; f < names.size(); ++f) report.features[f].name = names[f];
  for (const auto& tree : trees) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      report.has_splits = true;
      report.features[static_cast<std::size_t>(node.feature)].total_gain +=
          std::max(node.gain, 0.0);
    }
  }
  double total = 0.0;
  for (const auto& f : report.features) total += f.total_gain;
  if (total > 0.0) {
    for (auto& f : report.features) f.share = f.total_gain / total;
  }
  return report;
}

}  // namespace

std::vector<FeatureImportance> ImportanceReport::ranked() const {
  auto out = features;
  std::stable_sort(out.begin(), out.end(), [](const FeatureImportance& a, const FeatureImportance& b) {
    return a.share > b.share;
  });
  return out;
}

ImportanceReport gain_importance(const TreeModel& model) {
  return accumulate(model.feature_names, {model.tree});
}

ImportanceReport gain_importance(const ForestModel& model) {
  return accumulate(model.feature_names, model.trees);
}

ImportanceReport gain_importance(const BoostedModel& model) {
  return accumulate(model.feature_names, model.trees);
}

ImportanceReport gain_importance(const Model& model) {
  if (std::holds_alternative<LinearModel>(model)) {
    throw UnsupportedModelError("importance: linear models have no split gains");
  }
  return std::visit(
      [](const auto& m) -> ImportanceReport {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearModel>) {
          return {};
        } else {
          return gain_importance(m);
        }
      },
      model);
}

}  // namespace ranpredict
