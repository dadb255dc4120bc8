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

#include "gestaug/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gestaug {

namespace {

bool in_closed(double v, double lo, double hi) { return v >= lo && v <= hi; }

int clamp_index(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

/// Bilinear read at a real source position; neighbors clamped to border.
/// Caller guarantees sx in [0, W-1] and sy in [0, H-1].
inline double sample_bilinear(const Image& img, double sx, double sy, int c) {
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const double fx = sx - x0;
    const double fy = sy - y0;
    const int max_x = img.width() - 1;
    const int max_y = img.height() - 1;
    const int x0c = clamp_index(x0, max_x);
    const int x1c = clamp_index(x0 + 1, max_x);
    const int y0c = clamp_index(y0, max_y);
    const int y1c = clamp_index(y0 + 1, max_y);

    const double top = (1.0 - fx) * img.at(x0c, y0c, c) + fx * img.at(x1c, y0c, c);
    const double bottom = (1.0 - fx) * img.at(x0c, y1c, c) + fx * img.at(x1c, y1c, c);
    return (1.0 - fy) * top + fy * bottom;
}

/// Exact 0/±1 near axis-aligned angles, so 90-degree multiples permute
/// pixels instead of leaking one-ulp trigonometric noise into the border
/// bounds check.
inline double snap_trig(double v) {
    if (std::abs(v) < 1e-12) return 0.0;
    if (std::abs(v - 1.0) < 1e-12) return 1.0;
    if (std::abs(v + 1.0) < 1e-12) return -1.0;
    return v;
}

void require_valid(const Image& img, const char* op) {
    if (img.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty image");
    }
}

}  // namespace

void AugmentationParams::validate() const {
    const bool scale_ok = crop_scale == kCropScaleSmall ||
                          crop_scale == kCropScaleLarge || crop_scale == 1.0;
    if (!scale_ok) {
        throw std::invalid_argument("AugmentationParams: crop_scale must be 0.90, 0.95 or 1.0");
    }
    if (!in_closed(crop_offset_x, 0.0, 1.0) || !in_closed(crop_offset_y, 0.0, 1.0)) {
        throw std::invalid_argument("AugmentationParams: crop offsets must be in [0,1]");
    }
    if (!in_closed(theta_deg, -15.0, 15.0)) {
        throw std::invalid_argument("AugmentationParams: theta_deg must be in [-15,15]");
    }
    if (!in_closed(zeta, 0.90, 1.10)) {
        throw std::invalid_argument("AugmentationParams: zeta must be in [0.90,1.10]");
    }
    if (!in_closed(beta, 0.8, 1.2)) {
        throw std::invalid_argument("AugmentationParams: beta must be in [0.8,1.2]");
    }
    if (!in_closed(gamma, 0.8, 1.2)) {
        throw std::invalid_argument("AugmentationParams: gamma must be in [0.8,1.2]");
    }
}

Image resize_bilinear(const Image& img, int width, int height) {
    require_valid(img, "resize_bilinear");
    if (width < 1 || height < 1) {
        throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
    }
    if (width == img.width() && height == img.height()) {
        return img;
    }

    Image out(width, height, img.channels());
    const double x_ratio = static_cast<double>(img.width()) / width;
    const double y_ratio = static_cast<double>(img.height()) / height;
    const int channels = img.channels();

    for (int y = 0; y < height; ++y) {
        const double sy = (y + 0.5) * y_ratio - 0.5;
        for (int x = 0; x < width; ++x) {
            const double sx = (x + 0.5) * x_ratio - 0.5;
            for (int c = 0; c < channels; ++c) {
                out.at(x, y, c) = quantize_channel(sample_bilinear(img, sx, sy, c));
            }
        }
    }
    return out;
}

Image crop_window(const Image& img, double crop_scale, double offset_x,
                  double offset_y) {
    require_valid(img, "crop");
    if (!(crop_scale > 0.0) || crop_scale > 1.0) {
        throw std::invalid_argument("crop: crop_scale must be in (0,1]");
    }
    if (!in_closed(offset_x, 0.0, 1.0) || !in_closed(offset_y, 0.0, 1.0)) {
        throw std::invalid_argument("crop: offsets must be in [0,1]");
    }

    const int crop_w = static_cast<int>(std::floor(crop_scale * img.width()));
    const int crop_h = static_cast<int>(std::floor(crop_scale * img.height()));
    if (crop_w < 1 || crop_h < 1) {
        throw std::invalid_argument("crop: window collapses to zero pixels");
    }

    const int x0 = static_cast<int>(std::lround(offset_x * (img.width() - crop_w)));
    const int y0 = static_cast<int>(std::lround(offset_y * (img.height() - crop_h)));

    Image out(crop_w, crop_h, img.channels());
    const int channels = img.channels();
    for (int y = 0; y < crop_h; ++y) {
        for (int x = 0; x < crop_w; ++x) {
            for (int c = 0; c < channels; ++c) {
                out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
            }
        }
    }
    return out;
}

Image crop(const Image& img, double crop_scale, double offset_x,
           double offset_y) {
    return resize_bilinear(crop_window(img, crop_scale, offset_x, offset_y),
                           img.width(), img.height());
}

Image rotate(const Image& img, double theta_deg, std::uint8_t fill) {
    require_valid(img, "rotate");
    if (!std::isfinite(theta_deg)) {
        throw std::invalid_argument("rotate: angle must be finite");
    }

    const double radians = theta_deg * std::numbers::pi / 180.0;
    const double cos_t = snap_trig(std::cos(radians));
    const double sin_t = snap_trig(std::sin(radians));
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    const double max_x = img.width() - 1;
    const double max_y = img.height() - 1;
    const int channels = img.channels();

    Image out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        const double ry = y - cy;
        for (int x = 0; x < img.width(); ++x) {
            const double rx = x - cx;
            // Inverse map: rotate the destination offset by -theta.
            const double sx = cx + cos_t * rx - sin_t * ry;
            const double sy = cy + sin_t * rx + cos_t * ry;
            if (sx < 0.0 || sx > max_x || sy < 0.0 || sy > max_y) {
                for (int c = 0; c < channels; ++c) out.at(x, y, c) = fill;
            } else {
                for (int c = 0; c < channels; ++c) {
                    out.at(x, y, c) = quantize_channel(sample_bilinear(img, sx, sy, c));
                }
            }
        }
    }
    return out;
}

Image zoom(const Image& img, double zeta, std::uint8_t fill) {
    require_valid(img, "zoom");
    if (!(zeta > 0.0) || !std::isfinite(zeta)) {
        throw std::invalid_argument("zoom: zeta must be a positive finite value");
    }

    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    const double max_x = img.width() - 1;
    const double max_y = img.height() - 1;
    const int channels = img.channels();

    Image out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        const double sy = cy + (y - cy) / zeta;
        const bool row_out = sy < 0.0 || sy > max_y;
        for (int x = 0; x < img.width(); ++x) {
            const double sx = cx + (x - cx) / zeta;
            if (row_out || sx < 0.0 || sx > max_x) {
                for (int c = 0; c < channels; ++c) out.at(x, y, c) = fill;
            } else {
                for (int c = 0; c < channels; ++c) {
                    out.at(x, y, c) = quantize_channel(sample_bilinear(img, sx, sy, c));
                }
            }
        }
    }
    return out;
}

Image adjust_brightness(const Image& img, double beta) {
    require_valid(img, "adjust_brightness");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("adjust_brightness: beta must be positive");
    }
    Image out = img;
    for (auto& v : out.data()) {
        v = quantize_channel(beta * v);
    }
    return out;
}

Image adjust_contrast(const Image& img, double gamma) {
    return adjust_contrast(img, gamma, ContrastPivot::kFixed);
}

Image adjust_contrast(const Image& img, double gamma, ContrastPivot pivot) {
    require_valid(img, "adjust_contrast");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("adjust_contrast: gamma must be positive");
    }

    std::vector<double> pivots(static_cast<std::size_t>(img.channels()),
                               kContrastPivot);
    if (pivot == ContrastPivot::kImageMean) {
        pivots = image_mean(img);
    }

    Image out = img;
    auto data = out.data();
    const int channels = img.channels();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double p = pivots[i % channels];
        data[i] = quantize_channel((data[i] - p) * gamma + p);
    }
    return out;
}

Image apply_chain(const Image& img, const AugmentationParams& params) {
    return apply_chain(img, params, ChainOptions{});
}

Image apply_chain(const Image& img, const AugmentationParams& params,
                  const ChainOptions& options) {
    params.validate();
    Image out = img;
    if (options.enable_crop) {
        out = options.crop_resize
                  ? crop(out, params.crop_scale, params.crop_offset_x,
                         params.crop_offset_y)
                  : crop_window(out, params.crop_scale, params.crop_offset_x,
                                params.crop_offset_y);
    }
    if (options.enable_rotate) {
        out = rotate(out, params.theta_deg, options.fill);
    }
    if (options.enable_zoom) {
        out = zoom(out, params.zeta, options.fill);
    }
    if (options.enable_brightness_contrast) {
        out = adjust_brightness(out, params.beta);
        out = adjust_contrast(out, params.gamma, options.contrast_pivot);
    }
    return out;
}

}  // namespace gestaug
