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

#include "gestaug/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "gestaug/baselines.hpp"
#include "gestaug/digest.hpp"
#include "gestaug/error.hpp"
#include "gestaug/png_io.hpp"
#include "gestaug/report.hpp"
#include "gestaug/rng.hpp"

namespace gestaug::cli {

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    file << text;
    if (!file) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

}  // namespace

int exit_code_for_current_exception(std::ostream& err) {
    try {
        throw;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err) {
    const DatasetProfile profile =
        profile_by_name(options.profile, options.joints, options.classes);

    std::vector<IndexRow> rows;
    bool any_split_file = false;
    for (const auto& split_file : profile.split_files) {
        const fs::path path = options.dataset_dir / split_file;
        if (!fs::exists(path)) continue;
        any_split_file = true;
        std::string split = fs::path(split_file).stem().string();
        if (const auto underscore = split.find('_'); underscore != std::string::npos) {
            split.resize(underscore);  // train_gestures -> train
        }
        std::vector<IndexRow> parsed =
            profile.name == "generic"
                ? parse_generic_index(path, profile)
                : parse_split_index(path, profile, split);
        if (parsed.empty()) {
            err << "warning: " << path.string() << " lists no sequences\n";
        }
        rows.insert(rows.end(), parsed.begin(), parsed.end());
    }

    if (!any_split_file) {
        err << "warning: no split index files found under "
            << options.dataset_dir.string() << "; nothing to ingest\n";
        out << "ingested 0 sequences\n";
        return kExitOk;
    }

    fs::create_directories(options.out_dir / "normalized");

    DatasetIndex index;
    index.profile = profile;
    int failures = 0;
    for (auto& row : rows) {
        const fs::path source = options.dataset_dir / row.sequence_path;
        try {
            const SkeletonSequence seq =
                parse_skeleton_text(source, profile.joint_count);
            if (seq.frames.empty()) {
                throw std::runtime_error("no frames in " + source.string());
            }
            const std::string normalized = "normalized/" + row.sample_id + ".sks";
            export_normalized(options.out_dir / normalized, seq);
            row.sequence_path = normalized;
            index.rows.push_back(row);
        } catch (const std::exception& e) {
            err << "error: " << row.sample_id << ": " << e.what() << "\n";
            ++failures;
        }
    }

    write_index(options.out_dir / "index.txt", index);
    out << "ingested " << index.rows.size() << " sequences";
    if (failures > 0) out << " (" << failures << " failed)";
    out << "\n";
    return failures > 0 ? kExitData : kExitOk;
}

int cmd_render(const RenderCmdOptions& options, std::ostream& out,
               std::ostream& err) {
    if (options.label_scheme != 14 && options.label_scheme != 28) {
        throw ConfigError("render: label scheme must be 14 or 28");
    }
    options.settings.validate();

    const DatasetIndex index = read_index(options.index_path);
    const fs::path index_root = options.index_path.parent_path();
    fs::create_directories(options.out_dir / "images");

    RenderSettings settings = options.settings;
    if (settings.draw_bones && settings.bones.empty() &&
        index.profile.joint_count == 22) {
        settings.bones = hand22_bones();
    }

    Manifest manifest;
    manifest.copies_per_sample = 0;
    manifest.png_compression = options.png_compression;

    int failures = 0;
    for (const auto& row : index.rows) {
        try {
            const SkeletonSequence seq =
                import_normalized(index_root / row.sequence_path);

            HardLabel label;
            if (options.label_scheme == 14) {
                if (!row.label14) {
                    throw std::runtime_error("row has no 14g label");
                }
                label = HardLabel{*row.label14, index.profile.num_classes_14};
            } else {
                if (!row.label28) {
                    throw std::runtime_error("row has no 28g label");
                }
                label = HardLabel{*row.label28, index.profile.num_classes_28};
            }
            label.validate();

            const Image image = render_sequence(seq, options.view, settings);
            const auto bytes = encode_png(image, options.png_compression);

            ManifestEntry entry;
            entry.sample_id = row.sample_id;
            entry.origin = Origin::original();
            entry.label = label;
            entry.image_path = image_relative_path(row.sample_id, entry.origin, "");
            entry.digest = sha256_hex(bytes);
            std::ofstream file(options.out_dir / entry.image_path,
                               std::ios::binary | std::ios::trunc);
            if (!file.write(reinterpret_cast<const char*>(bytes.data()),
                            static_cast<std::streamsize>(bytes.size()))) {
                throw std::runtime_error("write failed");
            }
            manifest.entries.push_back(std::move(entry));
        } catch (const std::exception& e) {
            err << "error: " << row.sample_id << ": " << e.what() << "\n";
            ++failures;
        }
    }

    write_manifest(options.out_dir / "manifest.txt", manifest);
    out << "rendered " << manifest.entries.size() << " images ("
        << viewpoint_to_string(options.view) << ", " << settings.width << "x"
        << settings.height << ")";
    if (failures > 0) out << " (" << failures << " failed)";
    out << "\n";
    return failures > 0 ? kExitData : kExitOk;
}

int cmd_augment(const AugmentOptions& options, std::ostream& out, std::ostream&) {
    const Manifest result =
        augment_dataset(options.manifest_path, options.out_dir, options.pipeline);
    out << "augmented " << result.entries.size() << " entries from "
        << result.entries.size() / (1 + static_cast<std::size_t>(options.pipeline.copies))
        << " originals (seed " << options.pipeline.seed << ", copies "
        << options.pipeline.copies << ", workers " << options.pipeline.workers
        << ")\n";
    return kExitOk;
}

int cmd_baseline(const BaselineOptions& options, std::ostream& out, std::ostream&) {
    if (options.method != "mixup" && options.method != "cutmix") {
        throw ConfigError("baseline: method must be mixup or cutmix");
    }

    Manifest input = read_manifest(options.manifest_path);
    input.canonicalize();
    std::vector<const ManifestEntry*> originals;
    for (const auto& entry : input.entries) {
        if (!entry.origin.is_augmented()) originals.push_back(&entry);
    }
    if (originals.size() < 2) {
        throw std::runtime_error("baseline: need at least two original samples");
    }
    const int num_classes = originals.front()->label.num_classes;
    for (const auto* entry : originals) {
        if (entry->label.num_classes != num_classes) {
            throw std::runtime_error("baseline: class counts differ across samples");
        }
    }

    const fs::path input_root = options.manifest_path.parent_path();
    fs::create_directories(options.out_dir / "images");

    const std::size_t pairs =
        options.pairs > 0 ? static_cast<std::size_t>(options.pairs)
                          : originals.size();

    MixedManifest manifest;
    manifest.global_seed = options.seed;
    manifest.method = options.method;
    manifest.num_classes = num_classes;

    for (std::size_t i = 0; i < pairs; ++i) {
        Rng rng = derive_rng(options.seed, "mix-" + std::to_string(i), 1);
        const std::size_t index_a = rng.next_u64() % originals.size();
        std::size_t index_b = rng.next_u64() % (originals.size() - 1);
        if (index_b >= index_a) ++index_b;  // distinct parents

        const ManifestEntry* entry_a = originals[index_a];
        const ManifestEntry* entry_b = originals[index_b];
        GestureSample sample_a{read_png(input_root / entry_a->image_path),
                               entry_a->label, entry_a->sample_id,
                               Origin::original()};
        GestureSample sample_b{read_png(input_root / entry_b->image_path),
                               entry_b->label, entry_b->sample_id,
                               Origin::original()};

        const MixedSample mixed =
            options.method == "mixup"
                ? mixup(sample_a, sample_b, rng.next_unit())
                : cutmix(sample_a, sample_b, rng);

        MixedManifestEntry entry;
        entry.mix_id = "mix-" + options.method + "-" + std::to_string(i);
        entry.parent_a = mixed.parent_a;
        entry.parent_b = mixed.parent_b;
        entry.lambda = mixed.lambda;
        entry.label = mixed.label;
        entry.image_path = "images/" + entry.mix_id + ".png";
        const auto bytes = encode_png(mixed.image, options.png_compression);
        entry.digest = sha256_hex(bytes);
        std::ofstream file(options.out_dir / entry.image_path,
                           std::ios::binary | std::ios::trunc);
        if (!file.write(reinterpret_cast<const char*>(bytes.data()),
                        static_cast<std::streamsize>(bytes.size()))) {
            throw std::runtime_error("write failed for " + entry.image_path);
        }
        manifest.entries.push_back(std::move(entry));
    }

    write_mixed_manifest(options.out_dir / "mixed_manifest.txt", manifest);
    out << "mixed " << manifest.entries.size() << " samples with "
        << options.method << " (seed " << options.seed << ")\n";
    return kExitOk;
}

int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream&) {
    const Manifest manifest = read_manifest(options.manifest_path);
    out << summary_to_text(summarize(manifest));
    const StatsReport report = compute_param_stats(manifest, options.bins);
    out << stats_to_text(report);
    if (options.csv_path) {
        write_text(*options.csv_path, stats_to_csv(report));
        out << "histograms written to " << options.csv_path->string() << "\n";
    }
    return report.range_violations == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream&) {
    const VerifyReport report = verify_manifest(options.manifest_path, options.replay);
    if (report.ok()) {
        out << "ok: " << report.entries_checked << " entries, "
            << report.replays_checked << " replay(s) checked\n";
        return kExitOk;
    }
    for (const auto& violation : report.violations) {
        out << "violation: "
            << (violation.sample_id.empty() ? "<manifest>" : violation.sample_id)
            << ": " << violation.message << "\n";
    }
    out << report.violations.size() << " violation(s)\n";
    return kExitCheckFailed;
}

BenchResult run_bench_once(const fs::path& manifest_path, const fs::path& out_dir,
                           const BenchOptions& options, int workers) {
    PipelineConfig config;
    config.seed = options.seed;
    config.copies = options.copies;
    config.workers = workers;
    config.chain = options.chain;
    config.png_compression = options.png_compression;

    const auto start = std::chrono::steady_clock::now();
    const Manifest result = augment_dataset(manifest_path, out_dir, config);
    const auto stop = std::chrono::steady_clock::now();

    BenchResult bench;
    bench.workers = workers;
    bench.seconds = std::chrono::duration<double>(stop - start).count();
    const double inputs = static_cast<double>(result.entries.size()) /
                          (1.0 + static_cast<double>(options.copies));
    if (bench.seconds > 0.0) {
        bench.samples_per_sec = inputs / bench.seconds;
        bench.images_per_sec =
            static_cast<double>(result.entries.size()) / bench.seconds;
    }
    return bench;
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream&) {
    const Manifest input = read_manifest(options.manifest_path);
    if (input.entries.empty()) {
        out << "bench: empty manifest, nothing to do\n";
        return kExitOk;
    }
    if (options.worker_counts.empty()) {
        throw ConfigError("bench: need at least one worker count");
    }

    out << "bench: " << input.entries.size() << " samples, copies "
        << options.copies << "\n";

    std::optional<Manifest> reference;
    fs::path reference_dir;
    double first_seconds = 0.0;
    bool mismatch = false;
    for (const int workers : options.worker_counts) {
        const fs::path run_dir =
            options.out_dir / ("w" + std::to_string(workers));
        const BenchResult result =
            run_bench_once(options.manifest_path, run_dir, options, workers);
        const Manifest manifest = read_manifest(run_dir / "manifest.txt");

        out << "  workers " << result.workers << ": " << result.seconds << " s, "
            << result.samples_per_sec << " samples/s, " << result.images_per_sec
            << " images/s";
        if (!reference) {
            reference = manifest;
            reference_dir = run_dir;
            first_seconds = result.seconds;
        } else {
            if (result.seconds > 0.0) {
                out << ", speedup " << first_seconds / result.seconds << "x";
            }
            const auto diffs = diff_manifests(*reference, manifest);
            if (diffs.empty()) {
                out << "  digests: identical";
            } else {
                out << "  digests: " << diffs.size() << " MISMATCH(ES)";
                mismatch = true;
            }
        }
        out << "\n";
    }
    return mismatch ? kExitCheckFailed : kExitOk;
}

}  // namespace gestaug::cli
