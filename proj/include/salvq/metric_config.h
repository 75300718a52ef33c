// Copyright 2026 The salvq Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SALVQ_METRIC_CONFIG_H_
#define SALVQ_METRIC_CONFIG_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace salvq {

// Constants for the full-reference metrics. Values marked "neutral" are
// placeholders for constants that were fitted elsewhere; every report carries
// a fingerprint of the effective values.
struct FrMetricConfig {
  double psnr_cap = 100.0;
  double ssim_c1 = (0.01 * 255) * (0.01 * 255);
  double ssim_c2 = (0.03 * 255) * (0.03 * 255);
  int ssim_window = 11;
  double ssim_sigma = 1.5;
  std::vector<double> msssim_weights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
  int vif_scales = 4;
  double vif_noise_var = 2.0;
  // OQ: a*IQ^d + b*DQ^e + c*IQ^d*DQ^d (neutral).
  double oq_a = 1.0, oq_b = 1.0, oq_c = 0.0, oq_d = 1.0, oq_e = 1.0;
  double phsd_epsilon = 0.5;
  double phsd_alpha = 1.0;
  // Row-major 4×4 contrast sensitivity mask for the 3-D block transform.
  std::array<double, 16> csf = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  double hv3d_beta1 = 1.0, hv3d_beta2 = 1.0, hv3d_beta3 = 1.0;
  int hv3d_block = 8;
  int flosim_patch = 8;

  void Validate() const;
};

enum class GbimMasking { kNeutral, kLuminance };

struct NrMetricConfig {
  int block_grid = 8;
  GbimMasking gbim_masking = GbimMasking::kNeutral;
  int nrpbm_probe = 9;
  // Edge pixels: Sobel magnitude above this fraction of the frame maximum.
  double edge_threshold = 0.1;
  int sadaka_region = 64;
  double sadaka_beta = 3.6;
  double jnb_contrast_split = 50.0;
  double jnb_width_low_contrast = 5.0;
  double jnb_width_high_contrast = 3.0;
  std::array<double, 5> vqsm_alpha = {0.0, 1.0, 0.0, -1.0, 0.0};
  int vqsm_window = 5;
  std::vector<double> aqi_directions = {0.0, 45.0, 90.0, 135.0};
  int aqi_length = 7;
  int aqi_bins = 64;
  double qa3d_tau = 1.0;
  int qa3d_history = 10;
  double nospdm_alpha = -245.9;
  double nospdm_beta = 261.9;
  double nospdm_gamma1 = -0.0240;
  double nospdm_gamma2 = 0.0160;
  double nospdm_gamma3 = 0.0064;
  double nospdm_mu_r = 1.0;
  double nospdm_omega_s = 1.0;
  double nospdm_lambda = 0.5;

  void Validate() const;
};

nlohmann::json ToJson(const FrMetricConfig& cfg);
nlohmann::json ToJson(const NrMetricConfig& cfg);
// Keys are optional; unknown keys raise ParamError so typos do not pass
// silently.
FrMetricConfig FrConfigFromJson(const nlohmann::json& j);
NrMetricConfig NrConfigFromJson(const nlohmann::json& j);

// 16 hex digits of FNV-1a over the canonical JSON dump.
std::string Fingerprint(const nlohmann::json& effective);

}  // namespace salvq

#endif  // SALVQ_METRIC_CONFIG_H_
