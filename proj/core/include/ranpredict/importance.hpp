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

#include <string>
#include <vector>

#include "ranpredict/boosting.hpp"
#include "ranpredict/forest.hpp"
#include "ranpredict/model.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict {

struct FeatureImportance {
  std::string name;
  double total_gain = 0.0;
  double share = 0.0;  // total_gain / sum of all gains
};

/// Gain-based importance: every split's criterion reduction is credited to
/// its feature and summed over all trees. CART and forest trees contribute
/// squared-error reduction, boosted trees their second-order gain.
struct ImportanceReport {
  std::vector<FeatureImportance> features;  // in model column order
  bool has_splits = false;  // false: no split anywhere, every share is 0

  // Sorted by share, largest first; ties keep column order.
  std::vector<FeatureImportance> ranked() const;
};

ImportanceReport gain_importance(const TreeModel& model);
ImportanceReport gain_importance(const ForestModel& model);
ImportanceReport gain_importance(const BoostedModel& model);
// Throws UnsupportedModelError for linear models.
ImportanceReport gain_importance(const Model& model);

}  // namespace ranpredict
