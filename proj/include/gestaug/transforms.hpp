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
 * @file transforms.hpp
 * @brief The four deterministic image transforms and their fixed chain.
 *
 * All operations are pure: same input and parameters give byte-identical
 * output. Geometry uses inverse mapping from destination to source with
 * bilinear interpolation; every op preserves the input dimensions (the
 * crop window is resized back to W x H).
 *
 * Conventions, fixed for reproducibility:
 *  - resize sampling uses half-pixel centers:
 *        src = (dst + 0.5) * (src_extent / dst_extent) - 0.5,
 *    with source reads clamped to the image border;
 *  - rotation and zoom are centered on ((W-1)/2, (H-1)/2); destination
 *    pixels whose mapped source falls outside [0,W-1] x [0,H-1] take the
 *    fill value (default black);
 *  - rotation angles are visually counter-clockwise (row 0 displayed on
 *    top); sin/cos are snapped to exact 0/±1 near axis-aligned angles so
 *    90-degree multiples are exact pixel permutations;
 *  - quantization happens once per op: round half away from zero, clamp.
 */

#pragma once

#include "gestaug/image.hpp"

namespace gestaug {

/**
 * @brief One concrete draw of the augmentation chain parameters.
 *
 * Crop scale is one of {0.90, 0.95}; offsets are fractions of the crop
 * slack; theta_deg in [-15,15]; zeta in [0.90,1.10]; beta and gamma in
 * [0.8,1.2]. validate() enforces the closed ranges.
 */
struct AugmentationParams {
    double crop_scale = 1.0;
    double crop_offset_x = 0.0;
    double crop_offset_y = 0.0;
    double theta_deg = 0.0;
    double zeta = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    static AugmentationParams identity() { return AugmentationParams{}; }

    /// Range check of a sampled draw. Identity params (crop_scale 1, all
    /// factors neutral) are also accepted so toggle-off runs validate.
    void validate() const;

    friend bool operator==(const AugmentationParams&,
                           const AugmentationParams&) = default;
};

/// The two crop scales the chain samples from.
inline constexpr double kCropScaleSmall = 0.90;
inline constexpr double kCropScaleLarge = 0.95;

/// Contrast pivot when ContrastPivot::kFixed is selected.
inline constexpr double kContrastPivot = 127.5;

enum class ContrastPivot {
    kFixed,     ///< pivot at mid-gray 127.5 (default)
    kImageMean  ///< pivot at the per-channel image mean
};

/// Resize @p img to @p width x @p height with bilinear interpolation.
Image resize_bilinear(const Image& img, int width, int height);

/// Extract the crop window without resizing back: size floor(s*W) x
/// floor(s*H), top-left at (round(ox*(W-cw)), round(oy*(H-ch))).
/// Rejects scales that floor to a zero-sized window.
Image crop_window(const Image& img, double crop_scale, double offset_x,
                  double offset_y);

/// Crop then resize back to the input dimensions.
Image crop(const Image& img, double crop_scale, double offset_x,
           double offset_y);

/// Rotate about the image center by @p theta_deg (counter-clockwise).
Image rotate(const Image& img, double theta_deg, std::uint8_t fill = 0);

/// Scale about the image center by @p zeta (> 0). zeta < 1 shrinks the
/// content and pads with @p fill; zeta > 1 magnifies the center.
Image zoom(const Image& img, double zeta, std::uint8_t fill = 0);

/// v -> clamp(round(beta * v)).
Image adjust_brightness(const Image& img, double beta);

/// v -> clamp(round((v - pivot) * gamma + pivot)) with pivot 127.5.
Image adjust_contrast(const Image& img, double gamma);

/// Contrast with a selectable pivot; kImageMean uses per-channel means.
Image adjust_contrast(const Image& img, double gamma, ContrastPivot pivot);

/**
 * @brief Per-transform enable flags plus the configurable knobs of the
 *        chain. A disabled transform acts as identity, which is how
 *        single-transform ablation runs are expressed.
 */
struct ChainOptions {
    bool enable_crop = true;
    bool enable_rotate = true;
    bool enable_zoom = true;
    bool enable_brightness_contrast = true;

    std::uint8_t fill = 0;
    ContrastPivot contrast_pivot = ContrastPivot::kFixed;
    /// When false, crop keeps the window size instead of resizing back.
    bool crop_resize = true;

    bool all_disabled() const {
        return !enable_crop && !enable_rotate && !enable_zoom &&
               !enable_brightness_contrast;
    }

    friend bool operator==(const ChainOptions&, const ChainOptions&) = default;
};

/// Fixed composition: crop, then rotate, then zoom, then brightness, then
/// contrast. Labels are untouched; every transform is label-preserving.
Image apply_chain(const Image& img, const AugmentationParams& params);

/// Chain with toggles and knobs. Defaults reproduce apply_chain exactly.
Image apply_chain(const Image& img, const AugmentationParams& params,
                  const ChainOptions& options);

}  // namespace gestaug
