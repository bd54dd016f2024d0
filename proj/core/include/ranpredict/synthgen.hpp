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
#include <cstdint>
#include <string>
#include <vector>

#include "ranpredict/ingest.hpp"

namespace ranpredict {

/// Link-adaptation model used to synthesise telemetry with a known
/// mechanism:
///
///   snr   ~ Normal(snr_mean_db, snr_std_db), clipped to [-10, 40] dB
///   mcs   = largest index with snr_thresholds_db[mcs] <= snr (0 if none)
///   bler  = logistic(-bler_steepness * (snr - snr_thresholds_db[mcs]))
///   brate = brate_scale_kbps * mcs_table[mcs] * (1 - bler)
///           + Normal(0, noise_std_kbps), clipped at 0
///   tti   = sample index mod tti_period; timestamps advance by 1 ms
struct GenConfig {
  std::size_t n_samples = 20000;
  std::uint64_t seed = 42;
  double snr_mean_db = 12.0;
  double snr_std_db = 6.0;
  // Spectral efficiency per MCS index; default 0.2 * (1 + 0.25 * mcs).
  std::vector<double> mcs_table = default_mcs_table();
  // Lowest SNR at which each MCS is selected; default -6 + mcs dB.
  std::vector<double> snr_thresholds_db = default_snr_thresholds();
  double bler_steepness = 0.8;
  double brate_scale_kbps = 400.0;
  double noise_std_kbps = 50.0;
  std::int64_t tti_period = 10240;
  std::int64_t start_timestamp_ms = 1719350000000;
  int ue_id = 1;
  std::string scenario = "synthetic";

  static std::vector<double> default_mcs_table();
  static std::vector<double> default_snr_thresholds();

  void validate() const;  // throws ConfigError
};

std::vector<MetricRecord> generate(const GenConfig& config);

// Link-adaptation rule on its own: MCS selected for a given SNR.
int select_mcs(const GenConfig& config, double snr_db);

}  // namespace ranpredict
