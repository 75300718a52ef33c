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

#include "salvq/metric_config.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "salvq/error.h"

namespace salvq {

using nlohmann::json;

namespace {

void RequireFiniteValue(double v, const char* name) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kParam, std::string(name) + " must be finite");
}

// Copies j[key] into `field` when present and records the key as consumed.
template <typename T>
void Take(const json& j, const char* key, T& field, std::vector<std::string>& seen) {
  seen.emplace_back(key);
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, std::string("config key '") + key + "': " + e.what());
  }
}

void RejectUnknown(const json& j, const std::vector<std::string>& seen) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      throw Error(ErrorCode::kParam, "unknown config key '" + key + "'");
    }
  }
}

}  // namespace

void FrMetricConfig::Validate() const {
  for (double v : {psnr_cap, ssim_c1, ssim_c2, ssim_sigma, vif_noise_var, oq_a, oq_b, oq_c, oq_d,
                   oq_e, phsd_epsilon, phsd_alpha, hv3d_beta1, hv3d_beta2, hv3d_beta3}) {
    RequireFiniteValue(v, "FR constant");
  }
  for (double v : csf) RequireFiniteValue(v, "CSF entry");
  if (ssim_window < 1 || ssim_window % 2 == 0) throw Error(ErrorCode::kParam, "SSIM window must be odd");
  if (!(ssim_sigma > 0)) throw Error(ErrorCode::kParam, "SSIM sigma must be > 0");
  if (msssim_weights.empty()) throw Error(ErrorCode::kParam, "MS-SSIM needs exponent weights");
  const double sum = std::accumulate(msssim_weights.begin(), msssim_weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-3) throw Error(ErrorCode::kParam, "MS-SSIM weights must sum to 1");
  if (vif_scales < 1 || vif_scales > 6) throw Error(ErrorCode::kParam, "VIF scales must be 1..6");
  if (!(vif_noise_var > 0)) throw Error(ErrorCode::kParam, "VIF noise variance must be > 0");
  if (phsd_epsilon < 0 || phsd_epsilon > 1) throw Error(ErrorCode::kParam, "PHSD epsilon must be in [0,1]");
  if (phsd_alpha < 0) throw Error(ErrorCode::kParam, "PHSD alpha must be >= 0");
  if (hv3d_block != 4 && hv3d_block != 8) throw Error(ErrorCode::kParam, "HV3D block must be 4 or 8");
  if (flosim_patch < 2) throw Error(ErrorCode::kParam, "FLOSIM patch must be >= 2");
}

void NrMetricConfig::Validate() const {
  for (double v : {edge_threshold, sadaka_beta, jnb_contrast_split, jnb_width_low_contrast,
                   jnb_width_high_contrast, qa3d_tau, nospdm_alpha, nospdm_beta, nospdm_gamma1,
                   nospdm_gamma2, nospdm_gamma3, nospdm_mu_r, nospdm_omega_s, nospdm_lambda}) {
    RequireFiniteValue(v, "NR constant");
  }
  for (double v : vqsm_alpha) RequireFiniteValue(v, "VQSM alpha");
  if (block_grid < 2) throw Error(ErrorCode::kParam, "block grid must be >= 2");
  if (nrpbm_probe < 2) throw Error(ErrorCode::kParam, "NRPBM probe must be >= 2");
  if (edge_threshold < 0 || edge_threshold >= 1) throw Error(ErrorCode::kParam, "edge threshold must be in [0,1)");
  if (sadaka_region < 8) throw Error(ErrorCode::kParam, "Sadaka region must be >= 8");
  if (!(sadaka_beta > 0)) throw Error(ErrorCode::kParam, "Sadaka beta must be > 0");
  if (!(jnb_width_low_contrast > 0) || !(jnb_width_high_contrast > 0)) {
    throw Error(ErrorCode::kParam, "JNB widths must be > 0");
  }
  if (vqsm_window < 3 || vqsm_window % 2 == 0) throw Error(ErrorCode::kParam, "VQSM window must be odd >= 3");
  if (aqi_directions.size() < 2) throw Error(ErrorCode::kParam, "AQI needs at least two directions");
  if (aqi_length < 1 || aqi_length % 2 == 0) throw Error(ErrorCode::kParam, "AQI length must be odd");
  if (aqi_bins < 2) throw Error(ErrorCode::kParam, "AQI needs at least two bins");
  if (qa3d_tau < 0) throw Error(ErrorCode::kParam, "QA3D threshold must be >= 0");
  if (qa3d_history < 1) throw Error(ErrorCode::kParam, "QA3D history must be >= 1");
}

json ToJson(const FrMetricConfig& c) {
  return json{{"psnr_cap", c.psnr_cap},
              {"ssim_c1", c.ssim_c1},
              {"ssim_c2", c.ssim_c2},
              {"ssim_window", c.ssim_window},
              {"ssim_sigma", c.ssim_sigma},
              {"msssim_weights", c.msssim_weights},
              {"vif_scales", c.vif_scales},
              {"vif_noise_var", c.vif_noise_var},
              {"oq_a", c.oq_a},
              {"oq_b", c.oq_b},
              {"oq_c", c.oq_c},
              {"oq_d", c.oq_d},
              {"oq_e", c.oq_e},
              {"phsd_epsilon", c.phsd_epsilon},
              {"phsd_alpha", c.phsd_alpha},
              {"csf", c.csf},
              {"hv3d_beta1", c.hv3d_beta1},
              {"hv3d_beta2", c.hv3d_beta2},
              {"hv3d_beta3", c.hv3d_beta3},
              {"hv3d_block", c.hv3d_block},
              {"flosim_patch", c.flosim_patch}};
}

json ToJson(const NrMetricConfig& c) {
  return json{{"block_grid", c.block_grid},
              {"gbim_masking", c.gbim_masking == GbimMasking::kNeutral ? "neutral" : "luminance"},
              {"nrpbm_probe", c.nrpbm_probe},
              {"edge_threshold", c.edge_threshold},
              {"sadaka_region", c.sadaka_region},
              {"sadaka_beta", c.sadaka_beta},
              {"jnb_contrast_split", c.jnb_contrast_split},
              {"jnb_width_low_contrast", c.jnb_width_low_contrast},
              {"jnb_width_high_contrast", c.jnb_width_high_contrast},
              {"vqsm_alpha", c.vqsm_alpha},
              {"vqsm_window", c.vqsm_window},
              {"aqi_directions", c.aqi_directions},
              {"aqi_length", c.aqi_length},
              {"aqi_bins", c.aqi_bins},
              {"qa3d_tau", c.qa3d_tau},
              {"qa3d_history", c.qa3d_history},
              {"nospdm_alpha", c.nospdm_alpha},
              {"nospdm_beta", c.nospdm_beta},
              {"nospdm_gamma1", c.nospdm_gamma1},
              {"nospdm_gamma2", c.nospdm_gamma2},
              {"nospdm_gamma3", c.nospdm_gamma3},
              {"nospdm_mu_r", c.nospdm_mu_r},
              {"nospdm_omega_s", c.nospdm_omega_s},
              {"nospdm_lambda", c.nospdm_lambda}};
}

FrMetricConfig FrConfigFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParam, "FR config must be a JSON object");
  FrMetricConfig c;
  std::vector<std::string> seen;
  Take(j, "psnr_cap", c.psnr_cap, seen);
  Take(j, "ssim_c1", c.ssim_c1, seen);
  Take(j, "ssim_c2", c.ssim_c2, seen);
  Take(j, "ssim_window", c.ssim_window, seen);
  Take(j, "ssim_sigma", c.ssim_sigma, seen);
  Take(j, "msssim_weights", c.msssim_weights, seen);
  Take(j, "vif_scales", c.vif_scales, seen);
  Take(j, "vif_noise_var", c.vif_noise_var, seen);
  Take(j, "oq_a", c.oq_a, seen);
  Take(j, "oq_b", c.oq_b, seen);
  Take(j, "oq_c", c.oq_c, seen);
  Take(j, "oq_d", c.oq_d, seen);
  Take(j, "oq_e", c.oq_e, seen);
  Take(j, "phsd_epsilon", c.phsd_epsilon, seen);
  Take(j, "phsd_alpha", c.phsd_alpha, seen);
  Take(j, "csf", c.csf, seen);
  Take(j, "hv3d_beta1", c.hv3d_beta1, seen);
  Take(j, "hv3d_beta2", c.hv3d_beta2, seen);
  Take(j, "hv3d_beta3", c.hv3d_beta3, seen);
  Take(j, "hv3d_block", c.hv3d_block, seen);
  Take(j, "flosim_patch", c.flosim_patch, seen);
  RejectUnknown(j, seen);
  c.Validate();
  return c;
}

NrMetricConfig NrConfigFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParam, "NR config must be a JSON object");
  NrMetricConfig c;
  std::vector<std::string> seen;
  std::string masking = "neutral";
  Take(j, "block_grid", c.block_grid, seen);
  Take(j, "gbim_masking", masking, seen);
  Take(j, "nrpbm_probe", c.nrpbm_probe, seen);
  Take(j, "edge_threshold", c.edge_threshold, seen);
  Take(j, "sadaka_region", c.sadaka_region, seen);
  Take(j, "sadaka_beta", c.sadaka_beta, seen);
  Take(j, "jnb_contrast_split", c.jnb_contrast_split, seen);
  Take(j, "jnb_width_low_contrast", c.jnb_width_low_contrast, seen);
  Take(j, "jnb_width_high_contrast", c.jnb_width_high_contrast, seen);
  Take(j, "vqsm_alpha", c.vqsm_alpha, seen);
  Take(j, "vqsm_window", c.vqsm_window, seen);
  Take(j, "aqi_directions", c.aqi_directions, seen);
  Take(j, "aqi_length", c.aqi_length, seen);
  Take(j, "aqi_bins", c.aqi_bins, seen);
  Take(j, "qa3d_tau", c.qa3d_tau, seen);
  Take(j, "qa3d_history", c.qa3d_history, seen);
  Take(j, "nospdm_alpha", c.nospdm_alpha, seen);
  Take(j, "nospdm_beta", c.nospdm_beta, seen);
  Take(j, "nospdm_gamma1", c.nospdm_gamma1, seen);
  Take(j, "nospdm_gamma2", c.nospdm_gamma2, seen);
  Take(j, "nospdm_gamma3", c.nospdm_gamma3, seen);
  Take(j, "nospdm_mu_r", c.nospdm_mu_r, seen);
  Take(j, "nospdm_omega_s", c.nospdm_omega_s, seen);
  Take(j, "nospdm_lambda", c.nospdm_lambda, seen);
  RejectUnknown(j, seen);
  if (masking == "neutral") {
    c.gbim_masking = GbimMasking::kNeutral;
  } else if (masking == "luminance") {
    c.gbim_masking = GbimMasking::kLuminance;
  } else {
    throw Error(ErrorCode::kParam, "gbim_masking must be 'neutral' or 'luminance'");
  }
  c.Validate();
  return c;
}

std::string Fingerprint(const json& effective) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : effective.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace salvq
