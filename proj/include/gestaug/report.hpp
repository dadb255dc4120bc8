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
 * @file report.hpp
 * @brief Manifest summaries, diffs, and parameter statistics.
 */

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gestaug/manifest.hpp"
#include "gestaug/skeleton.hpp"

namespace gestaug {

struct DatasetSummary {
    std::size_t total = 0;
    std::size_t originals = 0;
    std::size_t augmented = 0;
    std::map<int, std::size_t> per_class;           // over all entries
    std::map<int, std::size_t> per_class_original;  // originals only
    std::map<std::string, std::size_t> per_split;   // needs an index
    std::map<std::pair<int, int>, std::size_t> dimensions;  // needs files

    double augmented_ratio() const {
        return originals == 0 ? 0.0
                              : static_cast<double>(augmented) / originals;
    }
};

/// Counts from the manifest alone.
DatasetSummary summarize(const Manifest& manifest);

/// Adds the image dimension histogram (PNG headers under @p root) and,
/// when @p index is non-null, per-split counts keyed by the index rows.
DatasetSummary summarize(const Manifest& manifest,
                         const std::filesystem::path& root,
                         const DatasetIndex* index);

/// Render a summary as a small plain-text block.
std::string summary_to_text(const DatasetSummary& summary);

enum class DiffKind {
    kOnlyInA,
    kOnlyInB,
    kDigestMismatch,
    kLabelMismatch,
    kParamsMismatch,
};

struct ManifestDiff {
    std::string sample_id;
    DiffKind kind;

    friend bool operator==(const ManifestDiff&, const ManifestDiff&) = default;
};

/// Entry-level comparison keyed by sample_id. diff(a, a) is empty.
std::vector<ManifestDiff> diff_manifests(const Manifest& a, const Manifest& b);

std::string diff_to_text(const std::vector<ManifestDiff>& diffs);

/// Per-parameter distribution over a manifest's augmented entries.
struct ParamStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double range_lo = 0.0;  // histogram domain
    double range_hi = 0.0;
    std::vector<std::size_t> histogram;
};

struct StatsReport {
    std::size_t samples = 0;  // augmented entries with params
    std::map<std::string, ParamStats> params;
    std::size_t range_violations = 0;
};

StatsReport compute_param_stats(const Manifest& manifest, std::size_t bins = 20);

/// CSV rows: param,bin_index,bin_lo,bin_hi,count.
std::string stats_to_csv(const StatsReport& report);

std::string stats_to_text(const StatsReport& report);

/// Width and height from a PNG header without a full decode.
std::pair<int, int> read_png_size(const std::filesystem::path& path);

}  // namespace gestaug
