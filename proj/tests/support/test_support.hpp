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

// Shared fixtures and independent reference computations for tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ranpredict/dataset.hpp"

namespace testing_support {

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ranpredict_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline ranpredict::FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> names;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols; ++c) names.push_back("f" + std::to_string(c));
  return ranpredict::FeatureMatrix::from_rows(std::move(names), rows);
}

inline ranpredict::TargetVector target(std::vector<double> values) {
  return {"y", std::move(values)};
}

// Sum of squared deviations from the mean, computed in long double.
inline long double sse_about_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0L;
  long double s = 0.0L;
  for (double x : v) s += x;
  const long double m = s / static_cast<long double>(v.size());
  long double acc = 0.0L;
  for (double x : v) acc += (x - m) * (x - m);
  return acc;
}

struct BruteSplit {
  int feature = -1;
  double threshold = 0.0;
  long double criterion = std::numeric_limits<long double>::infinity();
};

// Exhaustive argmin of SSE(left) + SSE(right) over every feature and every
// midpoint between consecutive distinct values, honouring min_leaf. Ties
// keep the first candidate in (feature, threshold) order.
inline BruteSplit brute_force_root_split(const std::vector<std::vector<double>>& x,
                                         const std::vector<double>& y, std::size_t min_leaf,
                                         long double rel_tol = 1e-12L) {
  BruteSplit best;
  const std::size_t n = y.size();
  const std::size_t p = x.empty() ? 0 : x.front().size();
  const long double parent = sse_about_mean(y);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> vals;
    for (const auto& row : x) vals.push_back(row[j]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
      const double t = vals[k] + (vals[k + 1] - vals[k]) / 2.0;
      std::vector<double> l, r;
      for (std::size_t i = 0; i < n; ++i) (x[i][j] <= t ? l : r).push_back(y[i]);
      if (l.size() < min_leaf || r.size() < min_leaf) continue;
      const long double c = sse_about_mean(l) + sse_about_mean(r);
      if (c < best.criterion - rel_tol * std::max(parent, 1.0L)) {
        best = {static_cast<int>(j), t, c};
      }
    }
  }
  return best;
}

// True when a (feature, threshold) pair denotes the same split as the
// oracle's: same feature, same row partition, and thresholds equal up to
// the rounding of the midpoint (a couple of ulps).
inline bool same_split(const std::vector<std::vector<double>>& x, int feature, double threshold,
                       const BruteSplit& oracle) {
  if (feature != oracle.feature) return false;
  for (const auto& row : x) {
    if ((row[feature] <= threshold) != (row[feature] <= oracle.threshold)) return false;
  }
  const double scale = std::max(std::abs(threshold), std::abs(oracle.threshold));
  return std::abs(threshold - oracle.threshold) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

// Moore-Penrose pseudoinverse solve of min ||A w - b|| via one-sided Jacobi
// SVD, written independently of the library's solver.
inline std::vector<double> pinv_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i][p] * a[i][p];
          beta += a[i][q] * a[i][q];
          gamma += a[i][p] * a[i][q];
        }
        if (std::abs(gamma) <= 1e-300) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta + 1e-300));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a[i][p], aq = a[i][q];
          a[i][p] = c * ap - s * aq;
          a[i][q] = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v[i][p], vq = v[i][q];
          v[i][p] = c * vp - s * vq;
          v[i][q] = s * vp + c * vq;
        }
      }
    }
    if (off < 1e-15) break;
  }
  // Columns of a are now sigma_k * u_k.
  std::vector<double> sigma(n, 0.0);
  double smax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double s2 = 0;
    for (std::size_t i = 0; i < m; ++i) s2 += a[i][k] * a[i][k];
    sigma[k] = std::sqrt(s2);
    smax = std::max(smax, sigma[k]);
  }
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (sigma[k] <= 1e-10 * smax) continue;
    double ub = 0;
    for (std::size_t i = 0; i < m; ++i) ub += a[i][k] / sigma[k] * b[i];
    for (std::size_t i = 0; i < n; ++i) w[i] += v[i][k] * ub / sigma[k];
  }
  return w;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace testing_support
