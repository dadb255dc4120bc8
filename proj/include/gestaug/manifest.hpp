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
 * @file manifest.hpp
 * @brief The on-disk ledger mapping originals to augmented variants.
 *
 * Line-delimited text, one entry per line, schema version 1:
 *
 *     gestaug-manifest 1
 *     seed <u64>
 *     copies <n>
 *     toggles crop=<0|1> rotate=<0|1> zoom=<0|1> brightness_contrast=<0|1>
 *     fill <0..255>
 *     pivot <fixed|mean>
 *     crop_resize <0|1>
 *     png_compression <0..9>
 *     entry <sample_id> <orig|aug{k}> <parent|-> <class>/<classes> <path> <params|-> <sha256>
 *
 * Params are the seven chain values, comma-joined, written with
 * shortest-round-trip formatting so replays parse back bit-exactly.
 * Entries are canonically sorted by sample_id; serialization is therefore
 * byte-stable across runs and worker counts.
 *
 * Mixed (baseline) datasets use a sibling schema, `gestaug-mixed-manifest
 * 1`, whose entries carry two parents, the mixing weight and a soft label
 * probability vector instead of params.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gestaug/image.hpp"
#include "gestaug/transforms.hpp"

namespace gestaug {

struct ManifestEntry {
    std::string sample_id;
    Origin origin;
    std::string parent_id;  // empty for originals
    HardLabel label;
    std::string image_path;  // relative to the manifest's directory
    std::optional<AugmentationParams> params;  // present iff augmented
    std::string digest;  // sha256 of the image file bytes

    /// Structural checks (id, params presence, digest shape).
    void validate() const;
};

struct Manifest {
    int version = 1;
    std::uint64_t global_seed = 0;
    int copies_per_sample = 3;
    ChainOptions options;
    int png_compression = 3;
    std::vector<ManifestEntry> entries;

    /// Sort entries by sample_id (the canonical order).
    void canonicalize();
};

/// Canonical text form; canonicalizes a copy of @p manifest first.
std::string serialize_manifest(const Manifest& manifest);

Manifest parse_manifest_text(const std::string& text, const std::string& name);

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

/// Augmented-copy naming: `<parent>__aug<k>`; originals keep their id.
std::string augmented_id(const std::string& parent_id, int copy_index);

/// Image file naming inside the output tree: `images/<id>__orig.png` or
/// `images/<parent>__aug<k>.png`.
std::string image_relative_path(const std::string& sample_id, const Origin& origin,
                                const std::string& parent_id);

/// Serialize/parse the seven chain parameters (comma-joined reals).
std::string params_to_string(const AugmentationParams& params);
AugmentationParams params_from_string(const std::string& text);

struct MixedManifestEntry {
    std::string mix_id;
    std::string parent_a;
    std::string parent_b;
    double lambda = 1.0;
    SoftLabel label;
    std::string image_path;
    std::string digest;
};

struct MixedManifest {
    int version = 1;
    std::uint64_t global_seed = 0;
    std::string method = "mixup";  // mixup | cutmix
    int num_classes = 0;
    std::vector<MixedManifestEntry> entries;
};

std::string serialize_mixed_manifest(const MixedManifest& manifest);
MixedManifest parse_mixed_manifest_text(const std::string& text,
                                        const std::string& name);
void write_mixed_manifest(const std::filesystem::path& path,
                          const MixedManifest& manifest);
MixedManifest read_mixed_manifest(const std::filesystem::path& path);

}  // namespace gestaug
