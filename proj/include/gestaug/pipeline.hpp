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
 * @file pipeline.hpp
 * @brief Dataset-level orchestration: expand N originals into (1+copies)*N
 *        images plus a manifest, and verify the result.
 *
 * Per-sample work items are independent; a worker pool may process them in
 * any order. Parameters are derived per (sample, copy) from the global
 * seed, so the output is byte-identical for any worker count. Entries are
 * canonically sorted before the manifest is written.
 *
 * While a run is in flight the output directory holds a `.incomplete`
 * marker; it is removed only after the manifest has been written, so an
 * aborted run is detectable.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "gestaug/manifest.hpp"
#include "gestaug/transforms.hpp"

namespace gestaug {

struct PipelineConfig {
    std::uint64_t seed = 0;
    int copies = 3;
    int workers = 1;
    ChainOptions chain;
    int png_compression = 3;
    /// Hard-link original images into the output tree instead of copying.
    bool hard_link_originals = false;
};

/**
 * @brief Expand one sample into the original plus @p copies augmented
 *        versions (copies + 1 outputs; element 0 is untouched).
 *
 * Copy k uses sample_params(derive_rng(seed, sample.sample_id, k)).
 */
std::vector<GestureSample> augment_sample(const GestureSample& sample,
                                          std::uint64_t global_seed, int copies,
                                          const ChainOptions& options = {});

/**
 * @brief Expand a rendered dataset on disk.
 *
 * @p input_manifest must contain only original entries; image paths
 * resolve against its directory. Writes images/ plus manifest.txt under
 * @p out_dir and returns the manifest. An unreadable input image aborts
 * the run with the offending sample_id in the error message.
 */
Manifest augment_dataset(const std::filesystem::path& input_manifest,
                         const std::filesystem::path& out_dir,
                         const PipelineConfig& config);

enum class ReplayMode { kNone, kOne, kAll };

struct Violation {
    std::string sample_id;  // empty for manifest-level problems
    std::string message;
};

struct VerifyReport {
    std::vector<Violation> violations;
    std::size_t entries_checked = 0;
    std::size_t replays_checked = 0;

    bool ok() const { return violations.empty(); }
};

/**
 * @brief Check a generated dataset against its manifest: counts, parent
 *        links, label inheritance, parameter ranges and seed consistency,
 *        digest-vs-file equality, and (per @p replay) re-derivation of
 *        augmented images from their recorded params.
 *
 * Missing or corrupt files are reported as violations, not thrown.
 */
VerifyReport verify_manifest(const std::filesystem::path& manifest_path,
                             ReplayMode replay = ReplayMode::kOne);

/// Run fn(0..count-1) on a small thread pool. Exceptions propagate after
/// all workers stop; item order is unspecified.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gestaug
