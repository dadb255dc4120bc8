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

#include "gestaug/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "gestaug/digest.hpp"
#include "gestaug/png_io.hpp"
#include "gestaug/rng.hpp"

namespace gestaug {

namespace {

namespace fs = std::filesystem;

constexpr const char* kIncompleteMarker = ".incomplete";
constexpr const char* kManifestFile = "manifest.txt";

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(file)),
                                     std::istreambuf_iterator<char>());
}

void write_file_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

}  // namespace

std::vector<GestureSample> augment_sample(const GestureSample& sample,
                                          std::uint64_t global_seed, int copies,
                                          const ChainOptions& options) {
    if (copies < 0) {
        throw std::invalid_argument("augment_sample: copies must be >= 0");
    }
    validate_sample_id(sample.sample_id);
    sample.label.validate();

    std::vector<GestureSample> out;
    out.reserve(static_cast<std::size_t>(copies) + 1);
    out.push_back(sample);

    for (int k = 1; k <= copies; ++k) {
        Rng rng = derive_rng(global_seed, sample.sample_id,
                             static_cast<std::uint32_t>(k));
        const AugmentationParams params = sample_params(rng);
        GestureSample copy;
        copy.image = apply_chain(sample.image, params, options);
        copy.label = sample.label;  // all chain transforms are label-preserving
        copy.sample_id = augmented_id(sample.sample_id, k);
        copy.origin = Origin::augmented(k);
        out.push_back(std::move(copy));
    }
    return out;
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers < 1) {
        throw std::invalid_argument("parallel_for: workers must be >= 1");
    }
    if (count == 0) return;
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    const int thread_count = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(body);
    for (auto& thread : pool) thread.join();

    if (first_error) std::rethrow_exception(first_error);
}

Manifest augment_dataset(const fs::path& input_manifest_path,
                         const fs::path& out_dir, const PipelineConfig& config) {
    if (config.copies < 0) {
        throw std::invalid_argument("augment_dataset: copies must be >= 0");
    }

    Manifest input = read_manifest(input_manifest_path);
    for (const auto& entry : input.entries) {
        if (entry.origin.is_augmented()) {
            throw std::invalid_argument(
                "augment_dataset: input manifest already contains augmented entry " +
                entry.sample_id);
        }
    }
    input.canonicalize();

    const fs::path input_root = input_manifest_path.parent_path();
    fs::create_directories(out_dir / "images");
    { std::ofstream marker(out_dir / kIncompleteMarker); }

    struct ItemResult {
        std::vector<ManifestEntry> entries;
    };
    std::vector<ItemResult> results(input.entries.size());

    parallel_for(input.entries.size(), config.workers, [&](std::size_t i) {
        const ManifestEntry& source = input.entries[i];
        auto& result = results[i];

        const fs::path source_path = input_root / source.image_path;
        std::vector<std::uint8_t> original_bytes;
        Image original_image;
        try {
            original_bytes = read_file_bytes(source_path);
            original_image = decode_png(original_bytes);
        } catch (const std::exception& e) {
            throw std::runtime_error("sample " + source.sample_id +
                                     ": unreadable input image (" + e.what() + ")");
        }

        // Original: carried over byte-for-byte so the output tree is
        // self-contained.
        ManifestEntry orig;
        orig.sample_id = source.sample_id;
        orig.origin = Origin::original();
        orig.label = source.label;
        orig.image_path = image_relative_path(source.sample_id, orig.origin, "");
        const fs::path orig_dst = out_dir / orig.image_path;
        if (config.hard_link_originals) {
            std::error_code ec;
            fs::remove(orig_dst, ec);
            fs::create_hard_link(source_path, orig_dst, ec);
            if (ec) {
                write_file_bytes(orig_dst, original_bytes);  // cross-device fallback
            }
        } else {
            write_file_bytes(orig_dst, original_bytes);
        }
        orig.digest = sha256_hex(original_bytes);
        result.entries.push_back(std::move(orig));

        for (int k = 1; k <= config.copies; ++k) {
            Rng rng = derive_rng(config.seed, source.sample_id,
                                 static_cast<std::uint32_t>(k));
            const AugmentationParams params = sample_params(rng);
            const Image augmented = apply_chain(original_image, params, config.chain);
            const auto bytes = encode_png(augmented, config.png_compression);

            ManifestEntry entry;
            entry.origin = Origin::augmented(k);
            entry.sample_id = augmented_id(source.sample_id, k);
            entry.parent_id = source.sample_id;
            entry.label = source.label;
            entry.params = params;
            entry.image_path =
                image_relative_path(entry.sample_id, entry.origin, source.sample_id);
            entry.digest = sha256_hex(bytes);
            write_file_bytes(out_dir / entry.image_path, bytes);
            result.entries.push_back(std::move(entry));
        }
    });

    Manifest output;
    output.global_seed = config.seed;
    output.copies_per_sample = config.copies;
    output.options = config.chain;
    output.png_compression = config.png_compression;
    for (auto& result : results) {
        for (auto& entry : result.entries) {
            output.entries.push_back(std::move(entry));
        }
    }
    output.canonicalize();

    write_manifest(out_dir / kManifestFile, output);
    fs::remove(out_dir / kIncompleteMarker);
    return output;
}

VerifyReport verify_manifest(const fs::path& manifest_path, ReplayMode replay) {
    VerifyReport report;
    auto violation = [&](const std::string& id, const std::string& message) {
        report.violations.push_back(Violation{id, message});
    };

    Manifest manifest;
    try {
        manifest = read_manifest(manifest_path);
    } catch (const std::exception& e) {
        violation("", std::string("manifest unreadable: ") + e.what());
        return report;
    }
    const fs::path root = manifest_path.parent_path();

    if (fs::exists(root / kIncompleteMarker)) {
        violation("", "output directory is marked incomplete");
    }

    std::map<std::string, const ManifestEntry*> originals;
    std::set<std::string> seen_ids;
    std::size_t original_count = 0;
    std::size_t augmented_count = 0;
    for (const auto& entry : manifest.entries) {
        if (!seen_ids.insert(entry.sample_id).second) {
            violation(entry.sample_id, "duplicate sample_id");
        }
        if (entry.origin.is_augmented()) {
            ++augmented_count;
        } else {
            ++original_count;
            originals[entry.sample_id] = &entry;
        }
    }

    const std::size_t expected =
        original_count * (1 + static_cast<std::size_t>(manifest.copies_per_sample));
    if (manifest.entries.size() != expected) {
        violation("", "entry count " + std::to_string(manifest.entries.size()) +
                          " does not equal (1+copies)*originals = " +
                          std::to_string(expected));
    }
    if (augmented_count !=
        original_count * static_cast<std::size_t>(manifest.copies_per_sample)) {
        violation("", "augmented count does not equal copies*originals");
    }

    std::vector<const ManifestEntry*> replayable;
    for (const auto& entry : manifest.entries) {
        ++report.entries_checked;

        const ManifestEntry* parent = nullptr;
        if (entry.origin.is_augmented()) {
            const auto it = originals.find(entry.parent_id);
            if (it == originals.end()) {
                violation(entry.sample_id, "parent " + entry.parent_id + " not found");
            } else {
                parent = it->second;
                if (!(parent->label == entry.label)) {
                    violation(entry.sample_id, "label differs from parent");
                }
            }
            if (entry.params) {
                try {
                    entry.params->validate();
                } catch (const std::exception& e) {
                    violation(entry.sample_id, std::string("params out of range: ") + e.what());
                }
                Rng rng = derive_rng(manifest.global_seed, entry.parent_id,
                                     static_cast<std::uint32_t>(entry.origin.copy_index));
                if (!(sample_params(rng) == *entry.params)) {
                    violation(entry.sample_id, "params do not match the seed derivation");
                }
            }
        }

        const fs::path image_path = root / entry.image_path;
        std::error_code ec;
        if (!fs::exists(image_path, ec)) {
            violation(entry.sample_id, "image file missing: " + entry.image_path);
            continue;
        }
        try {
            if (sha256_file(image_path) != entry.digest) {
                violation(entry.sample_id, "digest mismatch for " + entry.image_path);
                continue;
            }
        } catch (const std::exception& e) {
            violation(entry.sample_id, std::string("digest check failed: ") + e.what());
            continue;
        }

        if (entry.origin.is_augmented() && parent != nullptr && entry.params) {
            replayable.push_back(&entry);
        }
    }

    // Re-derive augmented images from their recorded params and compare
    // digests. kOne picks a deterministic pseudo-random entry.
    if (replay != ReplayMode::kNone && !replayable.empty()) {
        std::vector<const ManifestEntry*> chosen;
        if (replay == ReplayMode::kAll) {
            chosen = replayable;
        } else {
            Rng rng = derive_rng(manifest.global_seed, "verify-replay", 1);
            chosen.push_back(
                replayable[static_cast<std::size_t>(rng.next_u64() % replayable.size())]);
        }
        for (const ManifestEntry* entry : chosen) {
            ++report.replays_checked;
            try {
                const Image parent_image =
                    read_png(root / originals.at(entry->parent_id)->image_path);
                const Image rebuilt =
                    apply_chain(parent_image, *entry->params, manifest.options);
                const auto bytes = encode_png(rebuilt, manifest.png_compression);
                if (sha256_hex(bytes) != entry->digest) {
                    violation(entry->sample_id, "replay digest mismatch");
                }
            } catch (const std::exception& e) {
                violation(entry->sample_id, std::string("replay failed: ") + e.what());
            }
        }
    }

    return report;
}

}  // namespace gestaug
