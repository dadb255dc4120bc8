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

#include "gestaug/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>

#include "gestaug/error.hpp"

namespace gestaug {

namespace {

using nlohmann::json;

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("config: unknown key '" + key + "' in " + where);
        }
    }
}

}  // namespace

void AppConfig::validate() const {
    if (copies < 0) throw ConfigError("config: copies must be >= 0");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (png_compression < 0 || png_compression > 9) {
        throw ConfigError("config: png_compression must be in [0,9]");
    }
    if (fill < 0 || fill > 255) throw ConfigError("config: fill must be in [0,255]");
    try {
        viewpoint_from_string(view);
        render.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ChainOptions AppConfig::chain_options() const {
    ChainOptions options;
    options.fill = static_cast<std::uint8_t>(fill);
    options.contrast_pivot = contrast_pivot;
    options.crop_resize = crop_resize;
    return options;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("config: cannot open " + path.string());
    }

    json root;
    try {
        root = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    check_keys(root,
               {"version", "seed", "copies", "workers", "fill", "contrast_pivot",
                "crop_resize", "png_compression", "view", "render"},
               "top level");

    if (!root.contains("version") || !root["version"].is_number_integer()) {
        throw ConfigError("config: missing integer 'version'");
    }
    if (root["version"].get<int>() != 1) {
        throw ConfigError("config: unsupported schema version " +
                          root["version"].dump());
    }

    AppConfig config;
    try {
        if (root.contains("seed")) config.seed = root["seed"].get<std::uint64_t>();
        if (root.contains("copies")) config.copies = root["copies"].get<int>();
        if (root.contains("workers")) config.workers = root["workers"].get<int>();
        if (root.contains("fill")) config.fill = root["fill"].get<int>();
        if (root.contains("png_compression")) {
            config.png_compression = root["png_compression"].get<int>();
        }
        if (root.contains("crop_resize")) {
            config.crop_resize = root["crop_resize"].get<bool>();
        }
        if (root.contains("view")) config.view = root["view"].get<std::string>();
        if (root.contains("contrast_pivot")) {
            const auto pivot = root["contrast_pivot"].get<std::string>();
            if (pivot == "fixed") {
                config.contrast_pivot = ContrastPivot::kFixed;
            } else if (pivot == "mean") {
                config.contrast_pivot = ContrastPivot::kImageMean;
            } else {
                throw ConfigError("config: contrast_pivot must be 'fixed' or 'mean'");
            }
        }
        if (root.contains("render")) {
            const json& render = root["render"];
            if (!render.is_object()) {
                throw ConfigError("config: 'render' must be an object");
            }
            check_keys(render,
                       {"width", "height", "joint_radius", "draw_bones", "margin"},
                       "render");
            if (render.contains("width")) config.render.width = render["width"].get<int>();
            if (render.contains("height")) {
                config.render.height = render["height"].get<int>();
            }
            if (render.contains("joint_radius")) {
                config.render.joint_radius = render["joint_radius"].get<int>();
            }
            if (render.contains("draw_bones")) {
                config.render.draw_bones = render["draw_bones"].get<bool>();
            }
            if (render.contains("margin")) {
                config.render.margin = render["margin"].get<double>();
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }

    config.validate();
    return config;
}

std::optional<std::filesystem::path> env_config_path() {
    const char* value = std::getenv("GESTAUG_CONFIG");
    if (value != nullptr && *value != '\0') {
        return std::filesystem::path(value);
    }
    return std::nullopt;
}

AppConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
    if (explicit_path) {
        return load_config(*explicit_path);
    }
    if (const auto env_path = env_config_path()) {
        return load_config(*env_path);
    }
    return AppConfig{};
}

}  // namespace gestaug
