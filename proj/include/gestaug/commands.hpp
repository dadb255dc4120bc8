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
 * @file commands.hpp
 * @brief The CLI subcommands as plain functions, so tests can drive them
 *        without spawning processes.
 *
 * Exit codes, used consistently by every command:
 *   0  success
 *   1  checks ran and found violations (verify, stats)
 *   64 command line usage error
 *   65 malformed input data (parse errors)
 *   70 runtime failure (I/O, unreadable image, internal)
 *   78 bad configuration
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gestaug/config.hpp"
#include "gestaug/pipeline.hpp"
#include "gestaug/render.hpp"

namespace gestaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitRuntime = 70;
inline constexpr int kExitConfig = 78;

/// Map an in-flight exception to the exit-code classes above, printing
/// the message to @p err.
int exit_code_for_current_exception(std::ostream& err);

struct IngestOptions {
    std::filesystem::path dataset_dir;
    std::filesystem::path out_dir;
    std::string profile = "shrec17";
    int joints = 22;
    int classes = 14;
};

/// Parse a dataset tree into normalized sequences plus an index file.
int cmd_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err);

struct RenderCmdOptions {
    std::filesystem::path index_path;
    std::filesystem::path out_dir;
    Viewpoint view;
    int label_scheme = 14;  // 14 or 28
    RenderSettings settings;
    int png_compression = 3;
};

/// Render every indexed sequence to a PNG and write an originals-only
/// manifest.
int cmd_render(const RenderCmdOptions& options, std::ostream& out, std::ostream& err);

struct AugmentOptions {
    std::filesystem::path manifest_path;
    std::filesystem::path out_dir;
    PipelineConfig pipeline;
};

/// Expand a rendered dataset by (1 + copies) with the transform chain.
int cmd_augment(const AugmentOptions& options, std::ostream& out, std::ostream& err);

struct BaselineOptions {
    std::filesystem::path manifest_path;
    std::filesystem::path out_dir;
    std::string method = "mixup";  // mixup | cutmix
    int pairs = 0;                 // 0 means one per input sample
    std::uint64_t seed = 0;
    int png_compression = 3;
};

/// Emit a mixed dataset (soft labels) from random sample pairs.
int cmd_baseline(const BaselineOptions& options, std::ostream& out, std::ostream& err);

struct StatsOptions {
    std::filesystem::path manifest_path;
    std::optional<std::filesystem::path> csv_path;
    std::size_t bins = 20;
};

/// Parameter distribution report; exit 1 when range violations exist.
int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::filesystem::path manifest_path;
    ReplayMode replay = ReplayMode::kOne;
};

/// Integrity check; exit 1 when violations are found.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::filesystem::path manifest_path;
    std::filesystem::path out_dir;
    std::vector<int> worker_counts = {1, 4};
    std::uint64_t seed = 0;
    int copies = 3;
    ChainOptions chain;
    int png_compression = 3;
};

struct BenchResult {
    int workers = 0;
    double seconds = 0.0;
    double samples_per_sec = 0.0;
    double images_per_sec = 0.0;  // output images written per second
};

/// Time full expansion runs per worker count and confirm their outputs
/// are digest-identical.
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// Bench machinery shared with tests: run one timed expansion.
BenchResult run_bench_once(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& out_dir,
                           const BenchOptions& options, int workers);

}  // namespace gestaug::cli
