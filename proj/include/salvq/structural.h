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

#ifndef SALVQ_STRUCTURAL_H_
#define SALVQ_STRUCTURAL_H_

#include <span>
#include <string>
#include <vector>

#include "salvq/image.h"
#include "salvq/maps.h"
#include "salvq/metric_config.h"

namespace salvq {

// Per-pixel SSIM with the Gaussian window from cfg. Same size as the inputs.
Plane SsimMap(const Plane& x, const Plane& y, const FrMetricConfig& cfg);
// Contrast-structure term only: (2σxy + C2) / (σx² + σy² + C2).
Plane ContrastStructureMap(const Plane& x, const Plane& y, const FrMetricConfig& cfg);

struct MsSsimResult {
  double value = 0.0;
  int scales = 0;
  std::string note;  // set when fewer scales than weights were usable
};

// Multi-scale SSIM. Each scale's contrast-structure map is pooled with the
// saliency pyramid level (nullptr = unweighted); luminance enters only at the
// coarsest scale. Scales whose smaller dimension would fall below the window
// are dropped and the remaining exponents renormalized. Throws TooSmall when
// fewer than two scales fit.
MsSsimResult MsSsim(const Plane& x, const Plane& y, const SaliencyMap* saliency,
                    const FrMetricConfig& cfg);

// Pixel-domain VIF over cfg.vif_scales scales (window 2^(k)+1, σ = N/5, from
// coarse to fine), numerator and denominator weighted by the saliency pyramid.
// Throws TooSmall when the finest window does not fit or dims < 32.
double Vif(const Plane& ref, const Plane& dist, const SaliencyMap* saliency,
           const FrMetricConfig& cfg);

// SSIM from the global moments of two equal-length sample sets.
double BlockSsim(std::span<const double> a, std::span<const double> b, double c1, double c2);

// PSNR for 8-bit data, capped at `cap` dB (MSE below 255²·10^(-cap/10)).
double PsnrFromMse(double mse, double cap);

}  // namespace salvq

#endif  // SALVQ_STRUCTURAL_H_
