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

#include "ranpredict/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "ranpredict/error.hpp"
#include "ranpredict/random.hpp"

namespace ranpredict {

namespace {
constexpr std::size_t kTableSize = kMaxMcs + 1;
constexpr double kSnrFloorDb = -10.0;
constexpr double kSnrCeilDb = 40.0;
}  // namespace

std::vector<double> GenConfig::default_mcs_table() {
  std::vector<double> t(kTableSize);
  for (std::size_t m = 0; m < kTableSize; ++m) t[m] = 0.2 * (1.0 + static_cast<double>(m) * 0.25);
  return t;
}

std::vector<double> GenConfig::default_snr_thresholds() {
  std::vector<double> t(kTableSize);
  for (std::size_t m = 0; m < kTableSize; ++m) t[m] = -6.0 + 1.0 * static_cast<double>(m);
  return t;
}

void GenConfig::validate() const {
  if (mcs_table.size() != kTableSize) throw ConfigError("synth: mcs_table needs 29 entries");
  if (snr_thresholds_db.size() != kTableSize) {
    throw ConfigError("synth: snr_thresholds_db needs 29 entries");
  }
  if (!std::is_sorted(mcs_table.begin(), mcs_table.end())) {
    throw ConfigError("synth: mcs_table must be non-decreasing");
  }
  if (!std::is_sorted(snr_thresholds_db.begin(), snr_thresholds_db.end())) {
    throw ConfigError("synth: snr_thresholds_db must be non-decreasing");
  }
  for (double v : mcs_table) {
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("synth: mcs_table entries must be >= 0");
  }
  for (double v : snr_thresholds_db) {
    if (!std::isfinite(v)) throw ConfigError("synth: snr_thresholds_db entries must be finite");
  }
  const auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!non_negative(snr_std_db) || !non_negative(bler_steepness) ||
      !non_negative(brate_scale_kbps) || !non_negative(noise_std_kbps)) {
    throw ConfigError("synth: std, steepness and scale parameters must be >= 0");
  }
  if (!std::isfinite(snr_mean_db)) throw ConfigError("synth: snr_mean_db must be finite");
  if (tti_period < 1) throw ConfigError("synth: tti_period must be >= 1");
  if (ue_id < 0 || ue_id > 65535) throw ConfigError("synth: ue_id out of range");
}

int select_mcs(const GenConfig& config, double snr_db) {
  const auto& thr = config.snr_thresholds_db;
  // Largest index whose threshold is <= snr.
  const auto it = std::upper_bound(thr.begin(), thr.end(), snr_db);
  if (it == thr.begin()) return 0;
  return static_cast<int>(it - thr.begin()) - 1;
}

std::vector<MetricRecord> generate(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<MetricRecord> out;
  out.reserve(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    MetricRecord r;
    r.timestamp_ms = config.start_timestamp_ms + static_cast<std::int64_t>(i);
    r.ue_id = config.ue_id;
    r.tti = static_cast<std::int64_t>(i) % config.tti_period;
    r.scenario = config.scenario;

    r.snr_db = std::clamp(rng.normal(config.snr_mean_db, config.snr_std_db), kSnrFloorDb, kSnrCeilDb);
    r.mcs = select_mcs(config, r.snr_db);
    const double margin = r.snr_db - config.snr_thresholds_db[static_cast<std::size_t>(r.mcs)];
    r.bler = std::clamp(1.0 / (1.0 + std::exp(config.bler_steepness * margin)), 0.0, 1.0);
    const double noise = rng.normal(0.0, config.noise_std_kbps);
    const double clean = config.brate_scale_kbps *
                         config.mcs_table[static_cast<std::size_t>(r.mcs)] * (1.0 - r.bler);
    r.brate_kbps = std::max(0.0, clean + noise);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ranpredict
