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
 * @file render.hpp
 * @brief Data-level fusion: a whole skeleton sequence rendered into one
 *        static 2D spatiotemporal image.
 *
 * Joints are projected orthographically from a chosen viewpoint, min-max
 * normalized over the whole sequence into the canvas (aspect-preserving,
 * with a margin), and drawn oldest to newest as filled disks, optionally
 * with bone segments. Time is encoded by a color ramp whose luminance
 * increases strictly with the frame fraction, so motion order stays
 * visible in a single frame.
 */

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gestaug/image.hpp"
#include "gestaug/skeleton.hpp"

namespace gestaug {

enum class ViewpointKind { kTopDown, kFrontAway, kSideLeft, kCustom };

/**
 * @brief Projection axis choice. The named views drop one world axis:
 *        top_down keeps (x,z), front_away keeps (x,y), side_left keeps
 *        (z,y). Custom rotates by azimuth about y then elevation about x
 *        and keeps (x,y); custom(0,0) coincides with front_away.
 */
struct Viewpoint {
    ViewpointKind kind = ViewpointKind::kFrontAway;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;

    static Viewpoint top_down() { return {ViewpointKind::kTopDown}; }
    static Viewpoint front_away() { return {ViewpointKind::kFrontAway}; }
    static Viewpoint side_left() { return {ViewpointKind::kSideLeft}; }
    static Viewpoint custom(double azimuth_deg, double elevation_deg) {
        return {ViewpointKind::kCustom, azimuth_deg, elevation_deg};
    }

    friend bool operator==(const Viewpoint&, const Viewpoint&) = default;
};

/// Parse "top_down" / "front_away" / "side_left" / "custom:<az>,<el>".
Viewpoint viewpoint_from_string(const std::string& text);
std::string viewpoint_to_string(const Viewpoint& view);

struct RenderSettings {
    int width = 227;
    int height = 227;
    int joint_radius = 2;
    bool draw_bones = true;
    std::vector<std::pair<int, int>> bones;  // empty means joints only
    double margin = 0.1;                     // fraction of each canvas edge

    /// Color ramp endpoints, linearly interpolated over the frame
    /// fraction. Defaults run dark blue to warm near-white; luminance
    /// (Rec.601) must increase strictly from start to end.
    std::array<std::uint8_t, 3> ramp_start{8, 8, 64};
    std::array<std::uint8_t, 3> ramp_end{255, 240, 128};

    /// Throws std::invalid_argument on out-of-range fields, canvases
    /// smaller than 32px, or a non-increasing ramp.
    void validate() const;
};

/// Rec.601 luma of an RGB triple.
double luminance(double r, double g, double b);

/// Ramp color at frame fraction @p t in [0,1], before quantization.
std::array<double, 3> ramp_color(const RenderSettings& settings, double t);

/// Orthographic projection of one joint; (u,v) in world units, v up.
std::pair<double, double> project(const Joint& joint, const Viewpoint& view);

/**
 * @brief Render the sequence into an RGB image.
 *
 * A single frame uses frame fraction 0. A degenerate extent (all joints
 * at one point) renders a single centered disk. Rejects empty sequences
 * and non-finite coordinates.
 */
Image render_sequence(const SkeletonSequence& seq, const Viewpoint& view,
                      const RenderSettings& settings);

/// Bone topology for the 22-joint hand layout used by the SHREC'17/DHG
/// datasets: wrist(0), palm(1), thumb from the wrist, four fingers from
/// the palm, four joints per digit.
std::vector<std::pair<int, int>> hand22_bones();

}  // namespace gestaug
