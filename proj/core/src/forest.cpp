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

#include "ranpredict/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "ranpredict/error.hpp"
#include "ranpredict/random.hpp"
#include "tree_builder.hpp"

namespace ranpredict {

void ForestParams::validate() const {
  if (n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
  if (max_depth < kUnboundedDepth) throw ConfigError("forest: max_depth must be >= -1");
  if (min_samples_leaf < 1) throw ConfigError("forest: min_samples_leaf must be >= 1");
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    throw ConfigError("forest: feature_fraction must lie in (0, 1]");
  }
}

double ForestModel::predict_row(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict(x);
  return sum / static_cast<double>(trees.size());
}

ForestModel fit_forest(const FeatureMatrix& x, const TargetVector& y, const ForestParams& params) {
  params.validate();
  const std::size_t n = x.rows();
  if (n == 0) throw ConfigError("fit_forest: no training rows");
  if (n != y.size()) throw DimensionError("fit_forest: X rows and y length differ");

  const double offset = detail::stable_mean(y.values);
  std::vector<double> grad(n);
  for (std::size_t i = 0; i < n; ++i) grad[i] = y.values[i] - offset;
  const std::vector<double> hess(n, 1.0);

  detail::ExactSplitConfig cfg;
  cfg.max_depth = params.max_depth;
  cfg.min_samples_leaf = params.min_samples_leaf;
  cfg.value_offset = offset;
  cfg.mean_targets = &y.values;
  const auto p = static_cast<double>(x.cols());
  cfg.features_per_node = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(params.feature_fraction * p - 1e-12)), 1, x.cols());

  ForestModel model;
  model.params = params;
  model.feature_names = x.column_names();
  model.trees.resize(params.n_trees);

  auto grow = [&](std::size_t b) {
    Rng rng = Rng::stream(params.seed, b);
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<std::size_t>(rng.uniform_index(n));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    model.trees[b] = detail::build_exact_tree(x, grad, hess, rows, cfg, &rng);
  };

  unsigned workers = params.n_threads ? params.n_threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(params.n_trees)));
  if (workers == 1) {
    for (std::size_t b = 0; b < params.n_trees; ++b) grow(b);
    return model;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < params.n_trees; b = next++) {
          try {
            grow(b);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return model;
}

TargetVector predict(const ForestModel& model, const FeatureMatrix& x) {
  if (x.cols() != model.n_features()) {
    throw DimensionError("predict: model expects " + std::to_string(model.n_features()) +
                         " features, got " + std::to_string(x.cols()));
  }
  TargetVector out{"prediction", std::vector<double>(x.rows())};
  for (std::size_t r = 0; r < x.rows(); ++r) out.values[r] = model.predict_row(x.row(r));
  return out;
}

}  // namespace ranpredict
