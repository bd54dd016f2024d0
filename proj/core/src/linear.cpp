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

#include "ranpredict/linear.hpp"

#include <Eigen/Dense>

#include "ranpredict/error.hpp"
#include "tree_builder.hpp"

namespace ranpredict {

double LinearModel::predict_row(std::span<const double> x) const {
  double acc = intercept;
  for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * x[j];
  return acc;
}

LinearModel fit_linear(const FeatureMatrix& x, const TargetVector& y) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (n == 0) throw ConfigError("fit_linear: no training rows");
  if (n != y.size()) throw DimensionError("fit_linear: X rows and y length differ");

  Eigen::VectorXd means(static_cast<Eigen::Index>(p));
  for (std::size_t c = 0; c < p; ++c) {
    means(static_cast<Eigen::Index>(c)) = detail::stable_mean(x.column(c));
  }
  const double y_mean = detail::stable_mean(y.values);

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                               static_cast<Eigen::Index>(p));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  Eigen::VectorXd centred(static_cast<Eigen::Index>(p));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      centred(static_cast<Eigen::Index>(c)) = x(r, c) - means(static_cast<Eigen::Index>(c));
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(centred);
    rhs += centred * (y.values[r] - y_mean);
  }
  gram = gram.selfadjointView<Eigen::Lower>();

  LinearModel model;
  model.feature_names = x.column_names();
  model.weights.assign(p, 0.0);
  if (p > 0) {
    // Complete orthogonal decomposition returns the minimum-norm solution
    // when the Gram matrix is singular and the exact one otherwise.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram.rows(), gram.cols());
    cod.setThreshold(1e-12);
    cod.compute(gram);
    const Eigen::VectorXd w = cod.solve(rhs);
    for (std::size_t c = 0; c < p; ++c) model.weights[c] = w(static_cast<Eigen::Index>(c));
  }
  double shift = 0.0;
  for (std::size_t c = 0; c < p; ++c) shift += model.weights[c] * means(static_cast<Eigen::Index>(c));
  model.intercept = y_mean - shift;
  return model;
}

TargetVector predict(const LinearModel& model, const FeatureMatrix& x) {
  if (x.cols() != model.n_features()) {
    throw DimensionError("predict: model expects " + std::to_string(model.n_features()) +
                         " features, got " + std::to_string(x.cols()));
  }
  TargetVector out{"prediction", std::vector<double>(x.rows())};
  for (std::size_t r = 0; r < x.rows(); ++r) out.values[r] = model.predict_row(x.row(r));
  return out;
}

}  // namespace ranpredict
