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

#include "gestaug/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gestaug {

namespace {

std::string format_real(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

const char* diff_kind_name(DiffKind kind) {
    switch (kind) {
        case DiffKind::kOnlyInA: return "only-in-a";
        case DiffKind::kOnlyInB: return "only-in-b";
        case DiffKind::kDigestMismatch: return "digest-mismatch";
        case DiffKind::kLabelMismatch: return "label-mismatch";
        case DiffKind::kParamsMismatch: return "params-mismatch";
    }
    return "?";
}

struct ParamAccumulator {
    double lo;
    double hi;
    std::vector<double> values;
};

}  // namespace

DatasetSummary summarize(const Manifest& manifest) {
    DatasetSummary summary;
    summary.total = manifest.entries.size();
    for (const auto& entry : manifest.entries) {
        ++summary.per_class[entry.label.class_index];
        if (entry.origin.is_augmented()) {
            ++summary.augmented;
        } else {
            ++summary.originals;
            ++summary.per_class_original[entry.label.class_index];
        }
    }
    return summary;
}

DatasetSummary summarize(const Manifest& manifest,
                         const std::filesystem::path& root,
                         const DatasetIndex* index) {
    DatasetSummary summary = summarize(manifest);

    std::map<std::string, std::string> split_of;  // sample_id -> split
    if (index != nullptr) {
        for (const auto& row : index->rows) {
            split_of[row.sample_id] = row.split;
        }
    }

    for (const auto& entry : manifest.entries) {
        try {
            ++summary.dimensions[read_png_size(root / entry.image_path)];
        } catch (const std::exception&) {
            // Missing files are verify's concern, not the summary's.
        }
        if (index != nullptr) {
            const std::string& key =
                entry.origin.is_augmented() ? entry.parent_id : entry.sample_id;
            const auto it = split_of.find(key);
            ++summary.per_split[it == split_of.end() ? "unknown" : it->second];
        }
    }
    return summary;
}

std::string summary_to_text(const DatasetSummary& summary) {
    std::ostringstream out;
    out << "entries " << summary.total << " (originals " << summary.originals
        << ", augmented " << summary.augmented << ", ratio "
        << format_real(summary.augmented_ratio()) << ":1)\n";
    out << "classes " << summary.per_class.size() << "\n";
    for (const auto& [cls, count] : summary.per_class) {
        out << "  class " << cls << ": " << count;
        const auto it = summary.per_class_original.find(cls);
        out << " (" << (it == summary.per_class_original.end() ? 0 : it->second)
            << " original)\n";
    }
    for (const auto& [split, count] : summary.per_split) {
        out << "  split " << split << ": " << count << "\n";
    }
    for (const auto& [dims, count] : summary.dimensions) {
        out << "  " << dims.first << "x" << dims.second << ": " << count << "\n";
    }
    return out.str();
}

std::vector<ManifestDiff> diff_manifests(const Manifest& a, const Manifest& b) {
    std::map<std::string, const ManifestEntry*> in_a;
    std::map<std::string, const ManifestEntry*> in_b;
    for (const auto& entry : a.entries) in_a[entry.sample_id] = &entry;
    for (const auto& entry : b.entries) in_b[entry.sample_id] = &entry;

    std::vector<ManifestDiff> diffs;
    for (const auto& [id, entry_a] : in_a) {
        const auto it = in_b.find(id);
        if (it == in_b.end()) {
            diffs.push_back({id, DiffKind::kOnlyInA});
            continue;
        }
        const ManifestEntry* entry_b = it->second;
        if (!(entry_a->label == entry_b->label)) {
            diffs.push_back({id, DiffKind::kLabelMismatch});
        }
        if (entry_a->params.has_value() != entry_b->params.has_value() ||
            (entry_a->params && !(*entry_a->params == *entry_b->params))) {
            diffs.push_back({id, DiffKind::kParamsMismatch});
        }
        if (entry_a->digest != entry_b->digest) {
            diffs.push_back({id, DiffKind::kDigestMismatch});
        }
    }
    for (const auto& [id, entry_b] : in_b) {
        if (!in_a.contains(id)) {
            diffs.push_back({id, DiffKind::kOnlyInB});
        }
    }
    return diffs;
}

std::string diff_to_text(const std::vector<ManifestDiff>& diffs) {
    std::ostringstream out;
    for (const auto& diff : diffs) {
        out << diff_kind_name(diff.kind) << " " << diff.sample_id << "\n";
    }
    out << diffs.size() << " difference(s)\n";
    return out.str();
}

StatsReport compute_param_stats(const Manifest& manifest, std::size_t bins) {
    if (bins == 0) {
        throw std::invalid_argument("compute_param_stats: bins must be >= 1");
    }

    // Histogram domains are the sampling laws' closed ranges.
    std::array<std::pair<const char*, ParamAccumulator>, 7> accumulators{{
        {"crop_scale", {0.90, 0.95, {}}},
        {"crop_offset_x", {0.0, 1.0, {}}},
        {"crop_offset_y", {0.0, 1.0, {}}},
        {"theta_deg", {-15.0, 15.0, {}}},
        {"zeta", {0.90, 1.10, {}}},
        {"beta", {0.8, 1.2, {}}},
        {"gamma", {0.8, 1.2, {}}},
    }};

    StatsReport report;
    for (const auto& entry : manifest.entries) {
        if (!entry.params) continue;
        ++report.samples;
        const AugmentationParams& p = *entry.params;
        try {
            p.validate();
        } catch (const std::exception&) {
            ++report.range_violations;
        }
        accumulators[0].second.values.push_back(p.crop_scale);
        accumulators[1].second.values.push_back(p.crop_offset_x);
        accumulators[2].second.values.push_back(p.crop_offset_y);
        accumulators[3].second.values.push_back(p.theta_deg);
        accumulators[4].second.values.push_back(p.zeta);
        accumulators[5].second.values.push_back(p.beta);
        accumulators[6].second.values.push_back(p.gamma);
    }

    for (auto& [name, acc] : accumulators) {
        ParamStats stats;
        stats.range_lo = acc.lo;
        stats.range_hi = acc.hi;
        stats.histogram.assign(bins, 0);
        if (!acc.values.empty()) {
            stats.min = *std::min_element(acc.values.begin(), acc.values.end());
            stats.max = *std::max_element(acc.values.begin(), acc.values.end());
            double sum = 0.0;
            for (const double v : acc.values) {
                sum += v;
                const double t = (v - acc.lo) / (acc.hi - acc.lo);
                const auto bin = static_cast<long>(t * static_cast<double>(bins));
                const auto clamped =
                    std::clamp<long>(bin, 0, static_cast<long>(bins) - 1);
                ++stats.histogram[static_cast<std::size_t>(clamped)];
            }
            stats.mean = sum / static_cast<double>(acc.values.size());
        }
        report.params.emplace(name, std::move(stats));
    }
    return report;
}

std::string stats_to_csv(const StatsReport& report) {
    std::ostringstream out;
    out << "param,bin_index,bin_lo,bin_hi,count\n";
    for (const auto& [name, stats] : report.params) {
        const std::size_t bins = stats.histogram.size();
        const double width = (stats.range_hi - stats.range_lo) / static_cast<double>(bins);
        for (std::size_t i = 0; i < bins; ++i) {
            out << name << ',' << i << ',' << format_real(stats.range_lo + width * i)
                << ',' << format_real(stats.range_lo + width * (i + 1)) << ','
                << stats.histogram[i] << '\n';
        }
    }
    return out.str();
}

std::string stats_to_text(const StatsReport& report) {
    std::ostringstream out;
    out << "augmented samples with params: " << report.samples << "\n";
    for (const auto& [name, stats] : report.params) {
        out << "  " << name << ": min " << format_real(stats.min) << " max "
            << format_real(stats.max) << " mean " << format_real(stats.mean) << "\n";
    }
    out << "range violations: " << report.range_violations << "\n";
    return out.str();
}

std::pair<int, int> read_png_size(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("read_png_size: cannot open " + path.string());
    }
    // 8-byte signature, 4-byte length, "IHDR", then width/height big-endian.
    std::array<unsigned char, 24> header{};
    file.read(reinterpret_cast<char*>(header.data()), header.size());
    static const std::array<unsigned char, 8> signature{0x89, 'P', 'N', 'G',
                                                        '\r', '\n', 0x1A, '\n'};
    if (file.gcount() != static_cast<std::streamsize>(header.size()) ||
        !std::equal(signature.begin(), signature.end(), header.begin()) ||
        header[12] != 'I' || header[13] != 'H' || header[14] != 'D' ||
        header[15] != 'R') {
        throw std::runtime_error("read_png_size: not a PNG: " + path.string());
    }
    auto be32 = [&](std::size_t offset) {
        return (static_cast<int>(header[offset]) << 24) |
               (static_cast<int>(header[offset + 1]) << 16) |
               (static_cast<int>(header[offset + 2]) << 8) |
               static_cast<int>(header[offset + 3]);
    };
    return {be32(16), be32(20)};
}

}  // namespace gestaug
