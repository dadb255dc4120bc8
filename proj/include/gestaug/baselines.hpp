// Copyright 2026 The gestaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file baselines.hpp
 * @brief MixUp and CutMix reference baselines.
 *
 * Unlike the main chain these are not label-preserving: both emit a soft
 * label weighted by the surviving-pixel fraction of each parent.
 */

#pragma once

#include <string>

#include "gestaug/image.hpp"
#include "gestaug/rng.hpp"

namespace gestaug {

/// Output of a sample-mixing baseline.
struct MixedSample {
    Image image;
    SoftLabel label;
    std::string parent_a;
    std::string parent_b;
    double lambda = 1.0;  // weight of parent a, in [0,1]
};

/// Axis-aligned patch rectangle, [x0, x0+width) x [y0, y0+height).
struct PatchRect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    long long area() const {
        return static_cast<long long>(width) * height;
    }
};

/**
 * @brief Convex combination of two samples.
 *
 * Pixels: round(lambda*a + (1-lambda)*b), clamped. Label:
 * lambda*onehot(a) + (1-lambda)*onehot(b). Images must share dimensions
 * and labels must share the class count.
 */
MixedSample mixup(const GestureSample& a, const GestureSample& b, double lambda);

/// Paste the @p patch region of b into a; lambda is recomputed from the
/// clipped patch area so the label mix is exact even at borders.
MixedSample cutmix_at(const GestureSample& a, const GestureSample& b,
                      const PatchRect& patch);

/**
 * @brief Standard CutMix draw: lambda0 ~ U[0,1), patch side scales
 *        W*sqrt(1-lambda0) x H*sqrt(1-lambda0), uniform center, clipped
 *        to bounds. Consumes exactly 3 draws (lambda0, cx, cy).
 */
MixedSample cutmix(const GestureSample& a, const GestureSample& b, Rng& rng);

}  // namespace gestaug
