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
 * @file skeleton.hpp
 * @brief Skeleton sequence parsing and the normalized interchange format.
 *
 * Native parsing targets the per-sequence whitespace text layout the hand
 * gesture datasets ship (one frame per line, joint_count x 3 reals).
 * Everything else is converted once into the normalized `.sks` format:
 *
 *     gestaug-skeleton 1
 *     joints <n>
 *     frames <n>
 *     rate <hz>            (optional line)
 *     x y z x y z ...      (one line per frame, shortest round-trip reals)
 *
 * Coordinates survive export -> import bit-exactly.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gestaug/error.hpp"

namespace gestaug {

struct Joint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Joint&, const Joint&) = default;
};

/// Ordered frames of 3D joints; joint count is fixed per sequence
/// (22 for the hand datasets, 15 for body-joint sets, configurable).
struct SkeletonSequence {
    int joint_count = 22;
    std::vector<std::vector<Joint>> frames;
    std::optional<double> frame_rate;

    /// Throws std::invalid_argument if any frame has the wrong joint count
    /// or any coordinate is non-finite.
    void validate() const;

    friend bool operator==(const SkeletonSequence&, const SkeletonSequence&) = default;
};

/// One frame per nonempty line, joints in file order.
/// Throws ParseError (with line number) on malformed lines.
SkeletonSequence parse_skeleton_text(const std::filesystem::path& path,
                                     int joint_count);

/// Write the normalized interchange format described above.
void export_normalized(const std::filesystem::path& path,
                       const SkeletonSequence& seq);

/// Read the normalized format; rejects unknown schema versions.
SkeletonSequence import_normalized(const std::filesystem::path& path);

/// How to interpret one dataset's files; see the built-in profiles below.
struct DatasetProfile {
    std::string name = "generic";
    int joint_count = 22;

    // Split-index layout (whitespace-separated integer columns).
    int label_offset = 1;  // subtract from raw labels to get 0-based
    int col_gesture = 0;
    int col_finger = 1;
    int col_subject = 2;
    int col_essai = 3;
    int col_label14 = 4;
    int col_label28 = 5;
    int num_classes_14 = 14;
    int num_classes_28 = 28;

    /// Per-sequence file location, with {gesture} {finger} {subject}
    /// {essai} placeholders.
    std::string sequence_pattern =
        "gesture_{gesture}/finger_{finger}/subject_{subject}/essai_{essai}/"
        "skeletons_world.txt";

    /// Split index files looked up under the dataset root; the filename
    /// stem ("train_gestures" -> "train") becomes the row's split tag.
    std::vector<std::string> split_files = {"train_gestures.txt",
                                            "test_gestures.txt"};
};

/// SHREC'17-layout hand dataset: 22 joints, 1-based labels, both the
/// 14-gesture and 28-gesture schemes in the split index.
DatasetProfile shrec17_profile();

/// Flat layout: an index.txt with `<relative_path> <label> [subject]
/// [trial]` rows, 0-based labels, one class scheme.
DatasetProfile generic_profile(int joint_count, int num_classes);

/// Lookup by name ("shrec17" or "generic"). Throws ConfigError otherwise.
DatasetProfile profile_by_name(const std::string& name, int joint_count,
                               int num_classes);

/// One sequence in a dataset index.
struct IndexRow {
    std::string sample_id;
    std::filesystem::path sequence_path;  // relative to the dataset root
    std::optional<int> label14;           // 0-based
    std::optional<int> label28;           // 0-based
    int subject = 0;
    int trial = 0;
    std::string split = "all";  // train/test/all

    friend bool operator==(const IndexRow&, const IndexRow&) = default;
};

struct DatasetIndex {
    DatasetProfile profile;
    std::vector<IndexRow> rows;
};

/// Parse one SHREC-style split file. @p split tags the resulting rows.
/// Labels are offset-normalized and validated against the scheme sizes;
/// violations raise ParseError with the row number.
std::vector<IndexRow> parse_split_index(const std::filesystem::path& path,
                                        const DatasetProfile& profile,
                                        const std::string& split);

/// Parse a generic `index.txt` (path + 0-based label columns).
std::vector<IndexRow> parse_generic_index(const std::filesystem::path& path,
                                          const DatasetProfile& profile);

/// Write/read the on-disk index (`gestaug-index 1` header).
void write_index(const std::filesystem::path& path, const DatasetIndex& index);
DatasetIndex read_index(const std::filesystem::path& path);

}  // namespace gestaug
