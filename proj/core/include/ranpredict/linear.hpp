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

#include <span>
#include <string>
#include <vector>

#include "ranpredict/dataset.hpp"

namespace ranpredict {

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return weights.size(); }
  double predict_row(std::span<const double> x) const;
};

/// Ordinary least squares with an unpenalised intercept.
///
/// Columns are centred, the normal equations of the centred problem are
/// solved, and the intercept is recovered from the means. When the Gram
/// matrix is rank deficient the minimum-norm weight vector is returned
/// (pseudoinverse solution), so collinear inputs never fail.
LinearModel fit_linear(const FeatureMatrix& x, const TargetVector& y);

TargetVector predict(const LinearModel& model, const FeatureMatrix& x);

}  // namespace ranpredict
