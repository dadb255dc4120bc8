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

#include "gestaug/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gestaug {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Extent {
    double u_min = 0.0, u_max = 0.0;
    double v_min = 0.0, v_max = 0.0;
};

void set_rgb(Image& img, int x, int y, const std::array<std::uint8_t, 3>& rgb) {
    img.at(x, y, 0) = rgb[0];
    img.at(x, y, 1) = rgb[1];
    img.at(x, y, 2) = rgb[2];
}

void draw_disk(Image& img, double px, double py, int radius,
               const std::array<std::uint8_t, 3>& rgb) {
    const int x_lo = std::max(0, static_cast<int>(std::ceil(px - radius)));
    const int x_hi = std::min(img.width() - 1, static_cast<int>(std::floor(px + radius)));
    const int y_lo = std::max(0, static_cast<int>(std::ceil(py - radius)));
    const int y_hi = std::min(img.height() - 1, static_cast<int>(std::floor(py + radius)));
    const double r2 = static_cast<double>(radius) * radius;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            const double dx = x - px;
            const double dy = y - py;
            if (dx * dx + dy * dy <= r2) set_rgb(img, x, y, rgb);
        }
    }
}

void draw_segment(Image& img, double x0, double y0, double x1, double y1,
                  const std::array<std::uint8_t, 3>& rgb) {
    const int steps =
        1 + static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0))));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const int x = static_cast<int>(std::lround(x0 + t * (x1 - x0)));
        const int y = static_cast<int>(std::lround(y0 + t * (y1 - y0)));
        if (x >= 0 && x < img.width() && y >= 0 && y < img.height()) {
            set_rgb(img, x, y, rgb);
        }
    }
}

}  // namespace

Viewpoint viewpoint_from_string(const std::string& text) {
    if (text == "top_down") return Viewpoint::top_down();
    if (text == "front_away") return Viewpoint::front_away();
    if (text == "side_left") return Viewpoint::side_left();
    if (text.starts_with("custom:")) {
        const std::string args = text.substr(7);
        const auto comma = args.find(',');
        if (comma != std::string::npos) {
            double az = 0.0, el = 0.0;
            const char* a_begin = args.data();
            const char* a_end = args.data() + comma;
            const char* e_begin = args.data() + comma + 1;
            const char* e_end = args.data() + args.size();
            const auto ra = std::from_chars(a_begin, a_end, az);
            const auto re = std::from_chars(e_begin, e_end, el);
            if (ra.ec == std::errc() && ra.ptr == a_end && re.ec == std::errc() &&
                re.ptr == e_end) {
                return Viewpoint::custom(az, el);
            }
        }
    }
    throw std::invalid_argument(
        "unknown viewpoint '" + text +
        "' (expected top_down, front_away, side_left or custom:<az>,<el>)");
}

std::string viewpoint_to_string(const Viewpoint& view) {
    switch (view.kind) {
        case ViewpointKind::kTopDown: return "top_down";
        case ViewpointKind::kFrontAway: return "front_away";
        case ViewpointKind::kSideLeft: return "side_left";
        case ViewpointKind::kCustom: {
            char buf[64];
            auto* ptr = buf;
            auto r1 = std::to_chars(ptr, buf + sizeof buf, view.azimuth_deg);
            *r1.ptr = ',';
            auto r2 = std::to_chars(r1.ptr + 1, buf + sizeof buf, view.elevation_deg);
            return "custom:" + std::string(buf, r2.ptr);
        }
    }
    throw std::logic_error("viewpoint_to_string: bad kind");
}

void RenderSettings::validate() const {
    if (width < 32 || height < 32) {
        throw std::invalid_argument("RenderSettings: canvas must be at least 32x32");
    }
    if (joint_radius < 1) {
        throw std::invalid_argument("RenderSettings: joint_radius must be >= 1");
    }
    if (margin < 0.0 || margin >= 0.4) {
        throw std::invalid_argument("RenderSettings: margin must be in [0, 0.4)");
    }
    const double lum_start = luminance(ramp_start[0], ramp_start[1], ramp_start[2]);
    const double lum_end = luminance(ramp_end[0], ramp_end[1], ramp_end[2]);
    if (!(lum_end > lum_start)) {
        throw std::invalid_argument("RenderSettings: ramp luminance must increase");
    }
    const double avail_w = (width - 1) - 2.0 * (margin * width + joint_radius);
    const double avail_h = (height - 1) - 2.0 * (margin * height + joint_radius);
    if (avail_w <= 0.0 || avail_h <= 0.0) {
        throw std::invalid_argument("RenderSettings: margin and radius leave no canvas");
    }
    for (const auto& [a, b] : bones) {
        if (a < 0 || b < 0) {
            throw std::invalid_argument("RenderSettings: bone joint indices must be >= 0");
        }
    }
}

double luminance(double r, double g, double b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

std::array<double, 3> ramp_color(const RenderSettings& settings, double t) {
    std::array<double, 3> rgb{};
    for (int c = 0; c < 3; ++c) {
        const double a = settings.ramp_start[static_cast<std::size_t>(c)];
        const double b = settings.ramp_end[static_cast<std::size_t>(c)];
        rgb[static_cast<std::size_t>(c)] = a + (b - a) * t;
    }
    return rgb;
}

std::pair<double, double> project(const Joint& joint, const Viewpoint& view) {
    switch (view.kind) {
        case ViewpointKind::kTopDown: return {joint.x, joint.z};
        case ViewpointKind::kFrontAway: return {joint.x, joint.y};
        case ViewpointKind::kSideLeft: return {joint.z, joint.y};
        case ViewpointKind::kCustom: {
            const double az = view.azimuth_deg * kDegToRad;
            const double el = view.elevation_deg * kDegToRad;
            // Azimuth about the vertical axis, then elevation about x.
            const double x1 = std::cos(az) * joint.x + std::sin(az) * joint.z;
            const double z1 = -std::sin(az) * joint.x + std::cos(az) * joint.z;
            const double y2 = std::cos(el) * joint.y - std::sin(el) * z1;
            return {x1, y2};
        }
    }
    throw std::logic_error("project: bad viewpoint kind");
}

Image render_sequence(const SkeletonSequence& seq, const Viewpoint& view,
                      const RenderSettings& settings) {
    settings.validate();
    seq.validate();
    if (seq.frames.empty()) {
        throw std::invalid_argument("render_sequence: empty sequence");
    }
    if (settings.draw_bones) {
        for (const auto& [a, b] : settings.bones) {
            if (a >= seq.joint_count || b >= seq.joint_count) {
                throw std::invalid_argument("render_sequence: bone index exceeds joints");
            }
        }
    }

    // Project everything first; the normalization spans the whole sequence
    // so motion extent is preserved across frames.
    const std::size_t frame_count = seq.frames.size();
    const std::size_t joints = static_cast<std::size_t>(seq.joint_count);
    std::vector<double> us(frame_count * joints);
    std::vector<double> vs(frame_count * joints);
    Extent ext;
    bool first = true;
    for (std::size_t t = 0; t < frame_count; ++t) {
        for (std::size_t j = 0; j < joints; ++j) {
            const auto [u, v] = project(seq.frames[t][j], view);
            us[t * joints + j] = u;
            vs[t * joints + j] = v;
            if (first) {
                ext = Extent{u, u, v, v};
                first = false;
            } else {
                ext.u_min = std::min(ext.u_min, u);
                ext.u_max = std::max(ext.u_max, u);
                ext.v_min = std::min(ext.v_min, v);
                ext.v_max = std::max(ext.v_max, v);
            }
        }
    }

    const double extent =
        std::max(ext.u_max - ext.u_min, ext.v_max - ext.v_min);
    const double avail_w =
        (settings.width - 1) - 2.0 * (settings.margin * settings.width + settings.joint_radius);
    const double avail_h =
        (settings.height - 1) - 2.0 * (settings.margin * settings.height + settings.joint_radius);
    const double scale = extent > 0.0 ? std::min(avail_w, avail_h) / extent : 0.0;
    const double u_center = (ext.u_min + ext.u_max) / 2.0;
    const double v_center = (ext.v_min + ext.v_max) / 2.0;
    const double canvas_cx = (settings.width - 1) / 2.0;
    const double canvas_cy = (settings.height - 1) / 2.0;

    // v grows upward in world space, rows grow downward.
    auto to_px = [&](double u) { return canvas_cx + (u - u_center) * scale; };
    auto to_py = [&](double v) { return canvas_cy - (v - v_center) * scale; };

    Image img(settings.width, settings.height, 3);
    for (std::size_t t = 0; t < frame_count; ++t) {
        const double fraction =
            frame_count > 1 ? static_cast<double>(t) / (frame_count - 1) : 0.0;
        const auto real_rgb = ramp_color(settings, fraction);
        const std::array<std::uint8_t, 3> rgb{quantize_channel(real_rgb[0]),
                                              quantize_channel(real_rgb[1]),
                                              quantize_channel(real_rgb[2])};
        if (settings.draw_bones) {
            for (const auto& [a, b] : settings.bones) {
                const std::size_t ia = t * joints + static_cast<std::size_t>(a);
                const std::size_t ib = t * joints + static_cast<std::size_t>(b);
                draw_segment(img, to_px(us[ia]), to_py(vs[ia]), to_px(us[ib]),
                             to_py(vs[ib]), rgb);
            }
        }
        for (std::size_t j = 0; j < joints; ++j) {
            draw_disk(img, to_px(us[t * joints + j]), to_py(vs[t * joints + j]),
                      settings.joint_radius, rgb);
        }
    }
    return img;
}

std::vector<std::pair<int, int>> hand22_bones() {
    return {
        {0, 1},                            // wrist -> palm
        {0, 2},  {2, 3},  {3, 4},  {4, 5},   // thumb
        {1, 6},  {6, 7},  {7, 8},  {8, 9},   // index
        {1, 10}, {10, 11}, {11, 12}, {12, 13},  // middle
        {1, 14}, {14, 15}, {15, 16}, {16, 17},  // ring
        {1, 18}, {18, 19}, {19, 20}, {20, 21},  // pinky
    };
}

}  // namespace gestaug
