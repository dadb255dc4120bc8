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
 * @file config.hpp
 * @brief Optional JSON config file shared by the CLI commands.
 *
 * Schema version 1:
 *
 *     {
 *       "version": 1,
 *       "seed": 42,
 *       "copies": 3,
 *       "workers": 4,
 *       "fill": 0,
 *       "contrast_pivot": "fixed",      // or "mean"
 *       "crop_resize": true,
 *       "png_compression": 3,
 *       "view": "top_down",
 *       "render": { "width": 227, "height": 227, "joint_radius": 2,
 *                   "draw_bones": true, "margin": 0.1 }
 *     }
 *
 * Every key is optional except "version". Command-line flags override
 * config values. The config path comes from --config or, failing that,
 * the GESTAUG_CONFIG environment variable.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gestaug/render.hpp"
#include "gestaug/transforms.hpp"

namespace gestaug {

struct AppConfig {
    std::uint64_t seed = 0;
    int copies = 3;
    int workers = 1;
    int png_compression = 3;
    int fill = 0;
    ContrastPivot contrast_pivot = ContrastPivot::kFixed;
    bool crop_resize = true;
    std::string view = "top_down";
    RenderSettings render;

    /// Throws ConfigError when any field is out of range.
    void validate() const;

    ChainOptions chain_options() const;
};

/// Parse and validate a config file. Unknown keys are rejected so typos
/// fail loudly. Throws ConfigError.
AppConfig load_config(const std::filesystem::path& path);

/// The GESTAUG_CONFIG environment override, when set and nonempty.
std::optional<std::filesystem::path> env_config_path();

/// load_config from @p explicit_path, else from GESTAUG_CONFIG, else
/// defaults.
AppConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace gestaug
