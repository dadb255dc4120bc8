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

#include <doctest.h>

#include <cmath>
#include <string>

#include "gestaug/digest.hpp"
#include "gestaug/manifest.hpp"
#include "gestaug/png_io.hpp"
#include "gestaug/report.hpp"
#include "gestaug/rng.hpp"
#include "test_util.hpp"

using namespace gestaug;

namespace {

std::string fake_digest(char fill) { return std::string(64, fill); }

ManifestEntry original_entry(const std::string& id, int cls, int classes) {
    ManifestEntry entry;
    entry.sample_id = id;
    entry.origin = Origin::original();
    entry.label = HardLabel{cls, classes};
    entry.image_path = "images/" + id + "__orig.png";
    entry.digest = fake_digest('a');
    return entry;
}

ManifestEntry augmented_entry(const std::string& parent, int copy, int cls,
                              int classes) {
    ManifestEntry entry;
    entry.sample_id = augmented_id(parent, copy);
    entry.origin = Origin::augmented(copy);
    entry.parent_id = parent;
    entry.label = HardLabel{cls, classes};
    entry.image_path = image_relative_path(entry.sample_id, entry.origin, parent);
    Rng rng = derive_rng(7, parent, static_cast<std::uint32_t>(copy));
    entry.params = sample_params(rng);
    entry.digest = fake_digest('b');
    return entry;
}

Manifest small_manifest() {
    Manifest manifest;
    manifest.global_seed = 7;
    manifest.copies_per_sample = 2;
    for (int i = 0; i < 3; ++i) {
        const std::string id = "s" + std::to_string(i);
        manifest.entries.push_back(original_entry(id, i % 2, 2));
        for (int k = 1; k <= 2; ++k) {
            manifest.entries.push_back(augmented_entry(id, k, i % 2, 2));
        }
    }
    return manifest;
}

}  // namespace

TEST_CASE("params serialization round-trips bit-exactly") {
    Rng rng = derive_rng(99, "roundtrip", 1);
    for (int i = 0; i < 50; ++i) {
        const AugmentationParams p = sample_params(rng);
        const AugmentationParams back = params_from_string(params_to_string(p));
        CHECK(back == p);
    }
    CHECK_THROWS_AS(params_from_string("1,2,3"), std::invalid_argument);
}

TEST_CASE("manifest serialization round-trips and is canonical") {
    const Manifest manifest = small_manifest();
    const std::string text = serialize_manifest(manifest);

    // Shuffled entry order serializes to the identical bytes.
    Manifest shuffled = manifest;
    std::swap(shuffled.entries.front(), shuffled.entries.back());
    CHECK(serialize_manifest(shuffled) == text);

    const Manifest back = parse_manifest_text(text, "test");
    CHECK(back.global_seed == manifest.global_seed);
    CHECK(back.copies_per_sample == manifest.copies_per_sample);
    CHECK(back.entries.size() == manifest.entries.size());
    CHECK(serialize_manifest(back) == text);
}

TEST_CASE("manifest options survive the round trip") {
    Manifest manifest = small_manifest();
    manifest.options.enable_zoom = false;
    manifest.options.fill = 12;
    manifest.options.contrast_pivot = ContrastPivot::kImageMean;
    manifest.options.crop_resize = false;
    manifest.png_compression = 7;

    const Manifest back =
        parse_manifest_text(serialize_manifest(manifest), "test");
    CHECK(back.options == manifest.options);
    CHECK(back.png_compression == 7);
}

TEST_CASE("manifest parser rejects malformed input") {
    CHECK_THROWS_AS(parse_manifest_text("", "t"), ParseError);
    CHECK_THROWS_AS(parse_manifest_text("bogus 1\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_manifest_text("gestaug-manifest 2\n", "t"), ParseError);
    CHECK_THROWS_AS(
        parse_manifest_text("gestaug-manifest 1\nentry a orig - 0/2 img.png -\n", "t"),
        ParseError);  // missing digest field
}

TEST_CASE("entry validation enforces params presence rules") {
    ManifestEntry entry = original_entry("x", 0, 2);
    entry.params = AugmentationParams::identity();
    CHECK_THROWS_AS(entry.validate(), std::invalid_argument);

    ManifestEntry aug = augmented_entry("x", 1, 0, 2);
    aug.params.reset();
    CHECK_THROWS_AS(aug.validate(), std::invalid_argument);

    ManifestEntry short_digest = original_entry("x", 0, 2);
    short_digest.digest = "abc";
    CHECK_THROWS_AS(short_digest.validate(), std::invalid_argument);
}

TEST_CASE("manifest file io") {
    test::TempDir dir("manifest");
    const Manifest manifest = small_manifest();
    write_manifest(dir / "manifest.txt", manifest);
    const Manifest back = read_manifest(dir / "manifest.txt");
    CHECK(serialize_manifest(back) == serialize_manifest(manifest));
}

TEST_CASE("mixed manifest round-trips") {
    MixedManifest manifest;
    manifest.global_seed = 5;
    manifest.method = "cutmix";
    manifest.num_classes = 3;
    MixedManifestEntry entry;
    entry.mix_id = "mix-cutmix-0";
    entry.parent_a = "a";
    entry.parent_b = "b";
    entry.lambda = 0.8125;
    entry.label.probabilities = {0.8125, 0.1875, 0.0};
    entry.image_path = "images/mix-cutmix-0.png";
    entry.digest = fake_digest('c');
    manifest.entries.push_back(entry);

    const MixedManifest back =
        parse_mixed_manifest_text(serialize_mixed_manifest(manifest), "test");
    REQUIRE(back.entries.size() == 1);
    CHECK(back.method == "cutmix");
    CHECK(back.entries[0].lambda == entry.lambda);
    CHECK(back.entries[0].label.probabilities == entry.label.probabilities);
}

TEST_CASE("summarize counts originals, augmented and classes") {
    const DatasetSummary summary = summarize(small_manifest());
    CHECK(summary.total == 9);
    CHECK(summary.originals == 3);
    CHECK(summary.augmented == 6);
    CHECK(summary.augmented_ratio() == doctest::Approx(2.0));
    CHECK(summary.per_class.at(0) == 6);  // s0 and s2 families
    CHECK(summary.per_class.at(1) == 3);
    CHECK(summary.per_class_original.at(0) == 2);
}

TEST_CASE("summarize of an empty manifest is all zeros") {
    const DatasetSummary summary = summarize(Manifest{});
    CHECK(summary.total == 0);
    CHECK(summary.originals == 0);
    CHECK(summary.augmented == 0);
    CHECK(summary.per_class.empty());
}

TEST_CASE("summarize 14 classes x 2 samples with copies 3") {
    Manifest manifest;
    manifest.copies_per_sample = 3;
    for (int cls = 0; cls < 14; ++cls) {
        for (int i = 0; i < 2; ++i) {
            const std::string id = "c" + std::to_string(cls) + "-" + std::to_string(i);
            manifest.entries.push_back(original_entry(id, cls, 14));
            for (int k = 1; k <= 3; ++k) {
                manifest.entries.push_back(augmented_entry(id, k, cls, 14));
            }
        }
    }
    const DatasetSummary summary = summarize(manifest);
    CHECK(summary.total == 14 * 2 * 4);
    for (int cls = 0; cls < 14; ++cls) {
        CHECK(summary.per_class_original.at(cls) == 2);
        CHECK(summary.per_class.at(cls) == 8);
    }
    CHECK(summary.augmented_ratio() == doctest::Approx(3.0));
}

TEST_CASE("duplicate sample ids are rejected at serialization") {
    Manifest manifest = small_manifest();
    manifest.entries.push_back(manifest.entries.front());
    CHECK_THROWS_AS(serialize_manifest(manifest), std::invalid_argument);
}

TEST_CASE("summarize with an index adds split counts and dimensions") {
    test::TempDir dir("summary");
    std::filesystem::create_directories(dir / "images");

    Manifest manifest;
    manifest.copies_per_sample = 1;
    DatasetIndex index;
    index.profile = shrec17_profile();
    for (int i = 0; i < 4; ++i) {
        const std::string id = "s" + std::to_string(i);
        ManifestEntry orig = original_entry(id, 0, 2);
        const Image img(16 + 8 * (i % 2), 16, 3);
        const auto bytes = encode_png(img);
        orig.digest = sha256_hex(bytes);
        test::write_file(dir.path() / orig.image_path,
                         std::string(bytes.begin(), bytes.end()));
        manifest.entries.push_back(orig);

        ManifestEntry aug = augmented_entry(id, 1, 0, 2);
        test::write_file(dir.path() / aug.image_path,
                         std::string(bytes.begin(), bytes.end()));
        manifest.entries.push_back(aug);

        IndexRow row;
        row.sample_id = id;
        row.sequence_path = "normalized/" + id + ".sks";
        row.label14 = 0;
        row.split = i < 2 ? "train" : "test";
        index.rows.push_back(row);
    }

    const DatasetSummary summary = summarize(manifest, dir.path(), &index);
    CHECK(summary.per_split.at("train") == 4);  // originals + their copies
    CHECK(summary.per_split.at("test") == 4);
    CHECK(summary.dimensions.at({16, 16}) == 4);
    CHECK(summary.dimensions.at({24, 16}) == 4);

    const std::string text = summary_to_text(summary);
    CHECK(text.find("split train: 4") != std::string::npos);
    CHECK(text.find("24x16: 4") != std::string::npos);
}

TEST_CASE("diff of a manifest with itself is empty") {
    const Manifest manifest = small_manifest();
    CHECK(diff_manifests(manifest, manifest).empty());
}

TEST_CASE("diff flags a single digest change") {
    const Manifest a = small_manifest();
    Manifest b = a;
    b.entries[4].digest = fake_digest('f');
    const auto diffs = diff_manifests(a, b);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0].kind == DiffKind::kDigestMismatch);
    CHECK(diffs[0].sample_id == b.entries[4].sample_id);
}

TEST_CASE("diff flags additions and removals symmetrically") {
    const Manifest a = small_manifest();
    Manifest b = a;
    b.entries.pop_back();
    const auto ab = diff_manifests(a, b);
    REQUIRE(ab.size() == 1);
    CHECK(ab[0].kind == DiffKind::kOnlyInA);
    const auto ba = diff_manifests(b, a);
    REQUIRE(ba.size() == 1);
    CHECK(ba[0].kind == DiffKind::kOnlyInB);
}

TEST_CASE("seed change shows up as params+digest differences on augmented only") {
    const Manifest a = small_manifest();
    Manifest b = a;
    b.global_seed = 8;
    for (auto& entry : b.entries) {
        if (entry.origin.is_augmented()) {
            Rng rng = derive_rng(b.global_seed, entry.parent_id,
                                 static_cast<std::uint32_t>(entry.origin.copy_index));
            entry.params = sample_params(rng);
            entry.digest = fake_digest('d');
        }
    }
    const auto diffs = diff_manifests(a, b);
    std::size_t param_diffs = 0, digest_diffs = 0;
    for (const auto& diff : diffs) {
        if (diff.kind == DiffKind::kParamsMismatch) ++param_diffs;
        if (diff.kind == DiffKind::kDigestMismatch) ++digest_diffs;
        CHECK(diff.sample_id.find("__aug") != std::string::npos);
    }
    CHECK(param_diffs == 6);
    CHECK(digest_diffs == 6);
}

TEST_CASE("param stats cover ranges, histograms and violations") {
    Manifest manifest;
    manifest.copies_per_sample = 1;
    for (int i = 0; i < 200; ++i) {
        const std::string id = "s" + std::to_string(i);
        manifest.entries.push_back(original_entry(id, 0, 2));
        manifest.entries.push_back(augmented_entry(id, 1, 0, 2));
    }
    StatsReport report = compute_param_stats(manifest);
    CHECK(report.samples == 200);
    CHECK(report.range_violations == 0);
    const auto& theta = report.params.at("theta_deg");
    CHECK(theta.min >= -15.0);
    CHECK(theta.max <= 15.0);
    std::size_t total = 0;
    for (const auto count : theta.histogram) total += count;
    CHECK(total == 200);

    // Corrupt one recorded parameter.
    for (auto& entry : manifest.entries) {
        if (entry.params) {
            entry.params->zeta = 1.5;
            break;
        }
    }
    report = compute_param_stats(manifest);
    CHECK(report.range_violations == 1);

    const std::string csv = stats_to_csv(report);
    CHECK(csv.find("param,bin_index,bin_lo,bin_hi,count") == 0);
    CHECK(csv.find("theta_deg") != std::string::npos);
}

TEST_CASE("theta mean over a 10k-sample manifest sits near zero") {
    Manifest manifest;
    manifest.copies_per_sample = 1;
    manifest.global_seed = 31337;
    for (int i = 0; i < 10000; ++i) {
        manifest.entries.push_back(
            augmented_entry("p" + std::to_string(i), 1, 0, 2));
    }
    const StatsReport report = compute_param_stats(manifest);
    CHECK(report.samples == 10000);
    CHECK(report.range_violations == 0);
    CHECK(std::abs(report.params.at("theta_deg").mean) <= 0.5);
    CHECK(std::abs(report.params.at("zeta").mean - 1.0) <= 0.005);
}

TEST_CASE("png size reader matches encoded dimensions") {
    test::TempDir dir("pngsize");
    const Image img(41, 23, 3);
    const auto path = dir / "img.png";
    {
        std::ofstream file(path, std::ios::binary);
        const auto bytes = encode_png(img);
        file.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
    }
    CHECK(read_png_size(path) == std::pair{41, 23});
}
