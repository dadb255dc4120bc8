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

#include "gestaug/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gestaug/error.hpp"

namespace gestaug {

namespace {

std::string format_real(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

double parse_real(std::string_view token, const std::string& file, int line) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(file, line,
                         "expected a real number, got '" + std::string(token) + "'");
    }
    return value;
}

long long parse_integer(std::string_view token, const std::string& file, int line) {
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(file, line,
                         "expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token, const std::string& file, int line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(file, line, "expected an unsigned integer");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ') ++pos;
        if (pos > start) out.push_back(line.substr(start, pos - start));
    }
    return out;
}

bool parse_flag(std::string_view token, const std::string& file, int line) {
    if (token == "1") return true;
    if (token == "0") return false;
    throw ParseError(file, line, "expected 0 or 1");
}

std::string origin_to_string(const Origin& origin) {
    return origin.is_augmented() ? "aug" + std::to_string(origin.copy_index)
                                 : "orig";
}

Origin origin_from_string(std::string_view token, const std::string& file,
                          int line) {
    if (token == "orig") return Origin::original();
    if (token.starts_with("aug")) {
        const auto n = parse_integer(token.substr(3), file, line);
        return Origin::augmented(static_cast<int>(n));
    }
    throw ParseError(file, line, "bad origin '" + std::string(token) + "'");
}

std::string label_to_string(const HardLabel& label) {
    return std::to_string(label.class_index) + "/" + std::to_string(label.num_classes);
}

HardLabel label_from_string(std::string_view token, const std::string& file,
                            int line) {
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) {
        throw ParseError(file, line, "bad label (want class/classes)");
    }
    HardLabel label;
    label.class_index =
        static_cast<int>(parse_integer(token.substr(0, slash), file, line));
    label.num_classes =
        static_cast<int>(parse_integer(token.substr(slash + 1), file, line));
    label.validate();
    return label;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    file << text;
    if (!file) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

void ManifestEntry::validate() const {
    validate_sample_id(sample_id);
    label.validate();
    if (origin.is_augmented()) {
        if (parent_id.empty()) {
            throw std::invalid_argument("entry " + sample_id + ": augmented without parent");
        }
        if (!params) {
            throw std::invalid_argument("entry " + sample_id + ": augmented without params");
        }
    } else {
        if (!parent_id.empty() || params) {
            throw std::invalid_argument("entry " + sample_id +
                                        ": original with parent or params");
        }
    }
    if (digest.size() != 64) {
        throw std::invalid_argument("entry " + sample_id + ": digest must be sha256 hex");
    }
    if (image_path.empty() || image_path.find(' ') != std::string::npos) {
        throw std::invalid_argument("entry " + sample_id + ": bad image path");
    }
}

void Manifest::canonicalize() {
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) {
                  return a.sample_id < b.sample_id;
              });
}

std::string params_to_string(const AugmentationParams& p) {
    return format_real(p.crop_scale) + "," + format_real(p.crop_offset_x) + "," +
           format_real(p.crop_offset_y) + "," + format_real(p.theta_deg) + "," +
           format_real(p.zeta) + "," + format_real(p.beta) + "," +
           format_real(p.gamma);
}

AugmentationParams params_from_string(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 7) {
        throw std::invalid_argument("params must have 7 fields: " + text);
    }
    AugmentationParams p;
    p.crop_scale = parse_real(parts[0], "params", 0);
    p.crop_offset_x = parse_real(parts[1], "params", 0);
    p.crop_offset_y = parse_real(parts[2], "params", 0);
    p.theta_deg = parse_real(parts[3], "params", 0);
    p.zeta = parse_real(parts[4], "params", 0);
    p.beta = parse_real(parts[5], "params", 0);
    p.gamma = parse_real(parts[6], "params", 0);
    return p;
}

std::string augmented_id(const std::string& parent_id, int copy_index) {
    return parent_id + "__aug" + std::to_string(copy_index);
}

std::string image_relative_path(const std::string& sample_id, const Origin& origin,
                                const std::string& parent_id) {
    if (origin.is_augmented()) {
        return "images/" + parent_id + "__aug" + std::to_string(origin.copy_index) +
               ".png";
    }
    return "images/" + sample_id + "__orig.png";
}

std::string serialize_manifest(const Manifest& manifest) {
    Manifest sorted = manifest;
    sorted.canonicalize();

    for (std::size_t i = 1; i < sorted.entries.size(); ++i) {
        if (sorted.entries[i].sample_id == sorted.entries[i - 1].sample_id) {
            throw std::invalid_argument("manifest: duplicate sample_id " +
                                        sorted.entries[i].sample_id);
        }
    }

    std::ostringstream out;
    out << "gestaug-manifest " << sorted.version << "\n";
    out << "seed " << sorted.global_seed << "\n";
    out << "copies " << sorted.copies_per_sample << "\n";
    out << "toggles crop=" << (sorted.options.enable_crop ? 1 : 0)
        << " rotate=" << (sorted.options.enable_rotate ? 1 : 0)
        << " zoom=" << (sorted.options.enable_zoom ? 1 : 0) << " brightness_contrast="
        << (sorted.options.enable_brightness_contrast ? 1 : 0) << "\n";
    out << "fill " << static_cast<int>(sorted.options.fill) << "\n";
    out << "pivot "
        << (sorted.options.contrast_pivot == ContrastPivot::kFixed ? "fixed" : "mean")
        << "\n";
    out << "crop_resize " << (sorted.options.crop_resize ? 1 : 0) << "\n";
    out << "png_compression " << sorted.png_compression << "\n";
    for (const auto& entry : sorted.entries) {
        entry.validate();
        out << "entry " << entry.sample_id << ' ' << origin_to_string(entry.origin)
            << ' ' << (entry.parent_id.empty() ? "-" : entry.parent_id) << ' '
            << label_to_string(entry.label) << ' ' << entry.image_path << ' '
            << (entry.params ? params_to_string(*entry.params) : "-") << ' '
            << entry.digest << '\n';
    }
    return out.str();
}

Manifest parse_manifest_text(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    Manifest manifest;
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tokens = fields(line);
        if (tokens.empty()) continue;

        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "gestaug-manifest") {
                throw ParseError(name, line_no, "not a gestaug manifest");
            }
            manifest.version = static_cast<int>(parse_integer(tokens[1], name, line_no));
            if (manifest.version != 1) {
                throw ParseError(name, line_no,
                                 "unsupported manifest version " +
                                     std::to_string(manifest.version));
            }
            saw_header = true;
            continue;
        }

        if (tokens[0] == "seed" && tokens.size() == 2) {
            manifest.global_seed = parse_u64(tokens[1], name, line_no);
        } else if (tokens[0] == "copies" && tokens.size() == 2) {
            manifest.copies_per_sample =
                static_cast<int>(parse_integer(tokens[1], name, line_no));
        } else if (tokens[0] == "toggles" && tokens.size() == 5) {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                const auto eq = tokens[i].find('=');
                if (eq == std::string_view::npos) {
                    throw ParseError(name, line_no, "bad toggle field");
                }
                const auto key = tokens[i].substr(0, eq);
                const bool value = parse_flag(tokens[i].substr(eq + 1), name, line_no);
                if (key == "crop") manifest.options.enable_crop = value;
                else if (key == "rotate") manifest.options.enable_rotate = value;
                else if (key == "zoom") manifest.options.enable_zoom = value;
                else if (key == "brightness_contrast")
                    manifest.options.enable_brightness_contrast = value;
                else throw ParseError(name, line_no, "unknown toggle");
            }
        } else if (tokens[0] == "fill" && tokens.size() == 2) {
            const auto fill = parse_integer(tokens[1], name, line_no);
            if (fill < 0 || fill > 255) throw ParseError(name, line_no, "fill out of range");
            manifest.options.fill = static_cast<std::uint8_t>(fill);
        } else if (tokens[0] == "pivot" && tokens.size() == 2) {
            if (tokens[1] == "fixed") {
                manifest.options.contrast_pivot = ContrastPivot::kFixed;
            } else if (tokens[1] == "mean") {
                manifest.options.contrast_pivot = ContrastPivot::kImageMean;
            } else {
                throw ParseError(name, line_no, "pivot must be fixed or mean");
            }
        } else if (tokens[0] == "crop_resize" && tokens.size() == 2) {
            manifest.options.crop_resize = parse_flag(tokens[1], name, line_no);
        } else if (tokens[0] == "png_compression" && tokens.size() == 2) {
            manifest.png_compression =
                static_cast<int>(parse_integer(tokens[1], name, line_no));
        } else if (tokens[0] == "entry") {
            if (tokens.size() != 8) {
                throw ParseError(name, line_no, "manifest entry must have 7 fields");
            }
            ManifestEntry entry;
            entry.sample_id = std::string(tokens[1]);
            entry.origin = origin_from_string(tokens[2], name, line_no);
            if (tokens[3] != "-") entry.parent_id = std::string(tokens[3]);
            entry.label = label_from_string(tokens[4], name, line_no);
            entry.image_path = std::string(tokens[5]);
            if (tokens[6] != "-") {
                entry.params = params_from_string(std::string(tokens[6]));
            }
            entry.digest = std::string(tokens[7]);
            entry.validate();
            manifest.entries.push_back(std::move(entry));
        } else {
            throw ParseError(name, line_no, "unrecognized manifest line");
        }
    }

    if (!saw_header) {
        throw ParseError(name, 1, "empty manifest");
    }
    return manifest;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    write_text_file(path, serialize_manifest(manifest));
}

Manifest read_manifest(const std::filesystem::path& path) {
    return parse_manifest_text(read_text_file(path), path.string());
}

std::string serialize_mixed_manifest(const MixedManifest& manifest) {
    MixedManifest sorted = manifest;
    std::sort(sorted.entries.begin(), sorted.entries.end(),
              [](const MixedManifestEntry& a, const MixedManifestEntry& b) {
                  return a.mix_id < b.mix_id;
              });

    std::ostringstream out;
    out << "gestaug-mixed-manifest " << sorted.version << "\n";
    out << "seed " << sorted.global_seed << "\n";
    out << "method " << sorted.method << "\n";
    out << "classes " << sorted.num_classes << "\n";
    for (const auto& entry : sorted.entries) {
        entry.label.validate();
        out << "entry " << entry.mix_id << ' ' << entry.parent_a << ' '
            << entry.parent_b << ' ' << format_real(entry.lambda) << ' ';
        for (std::size_t i = 0; i < entry.label.probabilities.size(); ++i) {
            if (i) out << ',';
            out << format_real(entry.label.probabilities[i]);
        }
        out << ' ' << entry.image_path << ' ' << entry.digest << '\n';
    }
    return out.str();
}

MixedManifest parse_mixed_manifest_text(const std::string& text,
                                        const std::string& name) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    MixedManifest manifest;
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tokens = fields(line);
        if (tokens.empty()) continue;

        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "gestaug-mixed-manifest") {
                throw ParseError(name, line_no, "not a gestaug mixed manifest");
            }
            manifest.version = static_cast<int>(parse_integer(tokens[1], name, line_no));
            if (manifest.version != 1) {
                throw ParseError(name, line_no, "unsupported mixed manifest version");
            }
            saw_header = true;
            continue;
        }

        if (tokens[0] == "seed" && tokens.size() == 2) {
            manifest.global_seed = parse_u64(tokens[1], name, line_no);
        } else if (tokens[0] == "method" && tokens.size() == 2) {
            manifest.method = std::string(tokens[1]);
        } else if (tokens[0] == "classes" && tokens.size() == 2) {
            manifest.num_classes =
                static_cast<int>(parse_integer(tokens[1], name, line_no));
        } else if (tokens[0] == "entry") {
            if (tokens.size() != 8) {
                throw ParseError(name, line_no, "mixed entry must have 7 fields");
            }
            MixedManifestEntry entry;
            entry.mix_id = std::string(tokens[1]);
            entry.parent_a = std::string(tokens[2]);
            entry.parent_b = std::string(tokens[3]);
            entry.lambda = parse_real(tokens[4], name, line_no);
            for (const auto part : split(tokens[5], ',')) {
                entry.label.probabilities.push_back(parse_real(part, name, line_no));
            }
            entry.label.validate();
            entry.image_path = std::string(tokens[6]);
            entry.digest = std::string(tokens[7]);
            manifest.entries.push_back(std::move(entry));
        } else {
            throw ParseError(name, line_no, "unrecognized mixed manifest line");
        }
    }

    if (!saw_header) {
        throw ParseError(name, 1, "empty mixed manifest");
    }
    return manifest;
}

void write_mixed_manifest(const std::filesystem::path& path,
                          const MixedManifest& manifest) {
    write_text_file(path, serialize_mixed_manifest(manifest));
}

MixedManifest read_mixed_manifest(const std::filesystem::path& path) {
    return parse_mixed_manifest_text(read_text_file(path), path.string());
}

}  // namespace gestaug
