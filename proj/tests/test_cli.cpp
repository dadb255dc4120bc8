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

#include <cstdlib>
#include <sstream>

#include "gestaug/commands.hpp"
#include "gestaug/digest.hpp"
#include "gestaug/png_io.hpp"
#include "gestaug/report.hpp"
#include "gestaug/rng.hpp"
#include "test_util.hpp"

using namespace gestaug;
using namespace gestaug::cli;

namespace fs = std::filesystem;

namespace {

int run_binary(const std::string& args) {
    const std::string command =
        std::string(GESTAUG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

// SHREC-style fixture: split file plus per-sequence skeleton text.
void make_shrec_fixture(const fs::path& root, int sequences) {
    std::ostringstream split;
    for (int i = 0; i < sequences; ++i) {
        const int gesture = 1 + i % 14;
        const int finger = 1 + i % 2;
        const int subject = 1 + i;
        const int essai = 1;
        split << gesture << ' ' << finger << ' ' << subject << ' ' << essai << ' '
              << gesture << ' ' << (2 * gesture - finger % 2) << " 8\n";

        std::ostringstream body;
        for (int t = 0; t < 8; ++t) {
            for (int j = 0; j < 22; ++j) {
                if (j) body << ' ';
                // Spread joints so different views disagree.
                body << 0.1 * t + 0.01 * i << ' ' << 0.05 * j << ' '
                     << 0.02 * j + 0.03 * t;
            }
            body << '\n';
        }
        const fs::path seq_dir = root / ("gesture_" + std::to_string(gesture)) /
                                 ("finger_" + std::to_string(finger)) /
                                 ("subject_" + std::to_string(subject)) /
                                 ("essai_" + std::to_string(essai));
        test::write_file(seq_dir / "skeletons_world.txt", body.str());
    }
    test::write_file(root / "train_gestures.txt", split.str());
}

struct Pipeline {
    test::TempDir dir{"cli"};
    fs::path dataset;
    fs::path ingested;
    fs::path rendered;

    explicit Pipeline(int sequences) {
        dataset = dir / "dataset";
        ingested = dir / "ingested";
        rendered = dir / "rendered";
        make_shrec_fixture(dataset, sequences);

        std::ostringstream out, err;
        IngestOptions ingest;
        ingest.dataset_dir = dataset;
        ingest.out_dir = ingested;
        REQUIRE(cmd_ingest(ingest, out, err) == kExitOk);

        RenderCmdOptions render;
        render.index_path = ingested / "index.txt";
        render.out_dir = rendered;
        render.view = Viewpoint::top_down();
        render.settings.width = 64;
        render.settings.height = 64;
        REQUIRE(cmd_render(render, out, err) == kExitOk);
    }
};

}  // namespace

TEST_CASE("ingest parses a fixture tree and writes normalized files") {
    test::TempDir dir("cli");
    make_shrec_fixture(dir / "dataset", 3);

    std::ostringstream out, err;
    IngestOptions options;
    options.dataset_dir = dir / "dataset";
    options.out_dir = dir / "out";
    CHECK(cmd_ingest(options, out, err) == kExitOk);
    CHECK(out.str().find("ingested 3 sequences") != std::string::npos);

    const DatasetIndex index = read_index(dir.path() / "out" / "index.txt");
    REQUIRE(index.rows.size() == 3);
    std::size_t normalized = 0;
    for (const auto& entry :
         fs::directory_iterator(dir.path() / "out" / "normalized")) {
        (void)entry;
        ++normalized;
    }
    CHECK(normalized == 3);
    for (const auto& row : index.rows) {
        CHECK(row.label14.has_value());
        CHECK(row.label28.has_value());
        CHECK(row.split == "train");
        CHECK_NOTHROW(import_normalized(dir.path() / "out" / row.sequence_path));
    }
}

TEST_CASE("ingest of an empty directory warns and exits zero") {
    test::TempDir dir("cli");
    fs::create_directories(dir / "empty");
    std::ostringstream out, err;
    IngestOptions options;
    options.dataset_dir = dir / "empty";
    options.out_dir = dir / "out";
    CHECK(cmd_ingest(options, out, err) == kExitOk);
    CHECK(out.str().find("0 sequences") != std::string::npos);
    CHECK(err.str().find("warning") != std::string::npos);
}

TEST_CASE("ingest reports per-file parse failures and exits nonzero") {
    test::TempDir dir("cli");
    make_shrec_fixture(dir / "dataset", 3);
    // Truncate one skeleton file to a malformed line.
    test::write_file(dir.path() / "dataset" / "gesture_2" / "finger_2" /
                         "subject_2" / "essai_1" / "skeletons_world.txt",
                     "1 2 3\n");

    std::ostringstream out, err;
    IngestOptions options;
    options.dataset_dir = dir / "dataset";
    options.out_dir = dir / "out";
    CHECK(cmd_ingest(options, out, err) == kExitData);
    CHECK(out.str().find("ingested 2 sequences (1 failed)") != std::string::npos);
    CHECK(err.str().find("shrec17-g2-f2-s2-e1") != std::string::npos);
}

TEST_CASE("render emits one png per sequence and is deterministic") {
    Pipeline pipeline(3);

    const Manifest manifest = read_manifest(pipeline.rendered / "manifest.txt");
    REQUIRE(manifest.entries.size() == 3);
    for (const auto& entry : manifest.entries) {
        CHECK(fs::exists(pipeline.rendered / entry.image_path));
        CHECK(sha256_file(pipeline.rendered / entry.image_path) == entry.digest);
        CHECK(read_png_size(pipeline.rendered / entry.image_path) ==
              std::pair{64, 64});
    }

    // Re-render into a second directory: identical digests.
    std::ostringstream out, err;
    RenderCmdOptions render;
    render.index_path = pipeline.ingested / "index.txt";
    render.out_dir = pipeline.dir / "rendered2";
    render.view = Viewpoint::top_down();
    render.settings.width = 64;
    render.settings.height = 64;
    REQUIRE(cmd_render(render, out, err) == kExitOk);
    const Manifest again = read_manifest(pipeline.dir.path() / "rendered2" / "manifest.txt");
    CHECK(diff_manifests(manifest, again).empty());
}

TEST_CASE("different viewpoints change the rendered digests") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    RenderCmdOptions render;
    render.index_path = pipeline.ingested / "index.txt";
    render.out_dir = pipeline.dir / "front";
    render.view = Viewpoint::front_away();
    render.settings.width = 64;
    render.settings.height = 64;
    REQUIRE(cmd_render(render, out, err) == kExitOk);

    const Manifest top = read_manifest(pipeline.rendered / "manifest.txt");
    const Manifest front = read_manifest(pipeline.dir.path() / "front" / "manifest.txt");
    const auto diffs = diff_manifests(top, front);
    CHECK(diffs.size() == top.entries.size());  // every digest differs
}

TEST_CASE("render collects per-sequence failures and exits nonzero") {
    Pipeline pipeline(3);
    // Remove one normalized sequence so its render fails.
    const DatasetIndex index = read_index(pipeline.ingested / "index.txt");
    fs::remove(pipeline.ingested / index.rows[1].sequence_path);

    std::ostringstream out, err;
    RenderCmdOptions render;
    render.index_path = pipeline.ingested / "index.txt";
    render.out_dir = pipeline.dir / "partial";
    render.view = Viewpoint::top_down();
    render.settings.width = 64;
    render.settings.height = 64;
    CHECK(cmd_render(render, out, err) == kExitData);
    CHECK(out.str().find("rendered 2 images") != std::string::npos);
    CHECK(err.str().find(index.rows[1].sample_id) != std::string::npos);
}

TEST_CASE("render with the 28g scheme carries 28-class labels") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    RenderCmdOptions render;
    render.index_path = pipeline.ingested / "index.txt";
    render.out_dir = pipeline.dir / "r28";
    render.view = Viewpoint::top_down();
    render.settings.width = 64;
    render.settings.height = 64;
    render.label_scheme = 28;
    REQUIRE(cmd_render(render, out, err) == kExitOk);
    const Manifest manifest = read_manifest(pipeline.dir.path() / "r28" / "manifest.txt");
    for (const auto& entry : manifest.entries) {
        CHECK(entry.label.num_classes == 28);
    }
}

TEST_CASE("augment with all toggles on quadruples and verifies") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    AugmentOptions augment;
    augment.manifest_path = pipeline.rendered / "manifest.txt";
    augment.out_dir = pipeline.dir / "aug";
    augment.pipeline.seed = 77;
    augment.pipeline.copies = 3;
    REQUIRE(cmd_augment(augment, out, err) == kExitOk);
    CHECK(out.str().find("augmented 8 entries from 2 originals") != std::string::npos);

    VerifyOptions verify;
    verify.manifest_path = pipeline.dir / "aug" / "manifest.txt";
    verify.replay = ReplayMode::kAll;
    std::ostringstream vout;
    CHECK(cmd_verify(verify, vout, err) == kExitOk);
}

TEST_CASE("augment with all toggles off copies inputs byte-exactly") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    AugmentOptions augment;
    augment.manifest_path = pipeline.rendered / "manifest.txt";
    augment.out_dir = pipeline.dir / "aug";
    augment.pipeline.seed = 77;
    augment.pipeline.copies = 3;
    augment.pipeline.chain.enable_crop = false;
    augment.pipeline.chain.enable_rotate = false;
    augment.pipeline.chain.enable_zoom = false;
    augment.pipeline.chain.enable_brightness_contrast = false;
    REQUIRE(cmd_augment(augment, out, err) == kExitOk);

    const Manifest result = read_manifest(pipeline.dir.path() / "aug" / "manifest.txt");
    std::map<std::string, std::string> original_digest;
    for (const auto& entry : result.entries) {
        if (!entry.origin.is_augmented()) {
            original_digest[entry.sample_id] = entry.digest;
        }
    }
    for (const auto& entry : result.entries) {
        if (entry.origin.is_augmented()) {
            CHECK(entry.digest == original_digest.at(entry.parent_id));
        }
    }
}

TEST_CASE("crop-only ablation matches the single-op oracle") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    AugmentOptions augment;
    augment.manifest_path = pipeline.rendered / "manifest.txt";
    augment.out_dir = pipeline.dir / "aug";
    augment.pipeline.seed = 123;
    augment.pipeline.copies = 2;
    augment.pipeline.chain.enable_rotate = false;
    augment.pipeline.chain.enable_zoom = false;
    augment.pipeline.chain.enable_brightness_contrast = false;
    REQUIRE(cmd_augment(augment, out, err) == kExitOk);

    const Manifest result = read_manifest(pipeline.dir.path() / "aug" / "manifest.txt");
    for (const auto& entry : result.entries) {
        if (!entry.origin.is_augmented()) continue;
        const Image parent = read_png(pipeline.dir.path() / "aug" / "images" /
                                      (entry.parent_id + "__orig.png"));
        REQUIRE(entry.params.has_value());
        const Image expected = crop(parent, entry.params->crop_scale,
                                    entry.params->crop_offset_x,
                                    entry.params->crop_offset_y);
        CHECK(read_png(pipeline.dir.path() / "aug" / entry.image_path) == expected);
    }
}

TEST_CASE("stats reports zero violations for a fresh dataset") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    AugmentOptions augment;
    augment.manifest_path = pipeline.rendered / "manifest.txt";
    augment.out_dir = pipeline.dir / "aug";
    augment.pipeline.seed = 5;
    REQUIRE(cmd_augment(augment, out, err) == kExitOk);

    StatsOptions stats;
    stats.manifest_path = pipeline.dir / "aug" / "manifest.txt";
    stats.csv_path = pipeline.dir / "stats.csv";
    std::ostringstream sout;
    CHECK(cmd_stats(stats, sout, err) == kExitOk);
    CHECK(sout.str().find("range violations: 0") != std::string::npos);
    CHECK(test::read_file(pipeline.dir / "stats.csv")
              .find("param,bin_index") != std::string::npos);
}

TEST_CASE("stats flags a corrupted parameter and exits nonzero") {
    Pipeline pipeline(2);
    std::ostringstream out, err;
    AugmentOptions augment;
    augment.manifest_path = pipeline.rendered / "manifest.txt";
    augment.out_dir = pipeline.dir / "aug";
    augment.pipeline.seed = 6;
    REQUIRE(cmd_augment(augment, out, err) == kExitOk);

    const fs::path manifest_path = pipeline.dir / "aug" / "manifest.txt";
    Manifest manifest = read_manifest(manifest_path);
    for (auto& entry : manifest.entries) {
        if (entry.params) {
            entry.params->theta_deg = 30.0;
            break;
        }
    }
    write_manifest(manifest_path, manifest);

    StatsOptions stats;
    stats.manifest_path = manifest_path;
    std::ostringstream sout;
    CHECK(cmd_stats(stats, sout, err) == kExitCheckFailed);
    CHECK(sout.str().find("range violations: 1") != std::string::npos);
}

TEST_CASE("baseline emits mixed datasets with valid soft labels") {
    Pipeline pipeline(4);
    for (const std::string method : {"mixup", "cutmix"}) {
        std::ostringstream out, err;
        BaselineOptions baseline;
        baseline.manifest_path = pipeline.rendered / "manifest.txt";
        baseline.out_dir = pipeline.dir / ("mix_" + method);
        baseline.method = method;
        baseline.pairs = 6;
        baseline.seed = 9;
        REQUIRE(cmd_baseline(baseline, out, err) == kExitOk);

        const MixedManifest mixed = read_mixed_manifest(
            pipeline.dir.path() / ("mix_" + method) / "mixed_manifest.txt");
        CHECK(mixed.method == method);
        REQUIRE(mixed.entries.size() == 6);
        for (const auto& entry : mixed.entries) {
            CHECK_NOTHROW(entry.label.validate());
            CHECK(entry.parent_a != entry.parent_b);
            CHECK(entry.lambda >= 0.0);
            CHECK(entry.lambda <= 1.0);
            CHECK(sha256_file(pipeline.dir.path() / ("mix_" + method) /
                              entry.image_path) == entry.digest);
        }
    }
}

TEST_CASE("bench on an empty manifest is a zero-work success") {
    test::TempDir dir("cli");
    Manifest empty;
    empty.copies_per_sample = 0;
    write_manifest(dir / "manifest.txt", empty);

    BenchOptions bench;
    bench.manifest_path = dir / "manifest.txt";
    bench.out_dir = dir / "bench";
    std::ostringstream out, err;
    CHECK(cmd_bench(bench, out, err) == kExitOk);
    CHECK(out.str().find("nothing to do") != std::string::npos);
}

TEST_CASE("bench compares worker counts and confirms identical digests") {
    Pipeline pipeline(6);
    BenchOptions bench;
    bench.manifest_path = pipeline.rendered / "manifest.txt";
    bench.out_dir = pipeline.dir / "bench";
    bench.worker_counts = {1, 2};
    bench.seed = 11;
    bench.copies = 3;
    std::ostringstream out, err;
    CHECK(cmd_bench(bench, out, err) == kExitOk);
    CHECK(out.str().find("digests: identical") != std::string::npos);
    CHECK(out.str().find("images/s") != std::string::npos);
}

TEST_CASE("bench on 200 images: parallel beats serial with identical digests") {
    test::TempDir dir("bench200");
    fs::create_directories(dir / "in" / "images");
    Rng rng(200);
    Manifest manifest;
    manifest.copies_per_sample = 0;
    for (int i = 0; i < 200; ++i) {
        ManifestEntry entry;
        entry.sample_id = "b" + std::to_string(i);
        entry.origin = Origin::original();
        entry.label = HardLabel{0, 2};
        entry.image_path = image_relative_path(entry.sample_id, entry.origin, "");
        Image img(64, 64, 3);
        for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.next_u64());
        const auto bytes = encode_png(img);
        entry.digest = sha256_hex(bytes);
        test::write_file(dir.path() / "in" / entry.image_path,
                         std::string(bytes.begin(), bytes.end()));
        manifest.entries.push_back(std::move(entry));
    }
    write_manifest(dir.path() / "in" / "manifest.txt", manifest);

    BenchOptions bench;
    bench.manifest_path = dir.path() / "in" / "manifest.txt";
    bench.seed = 13;
    bench.copies = 3;
    const BenchResult serial =
        run_bench_once(bench.manifest_path, dir / "w1", bench, 1);
    const BenchResult parallel =
        run_bench_once(bench.manifest_path, dir / "w4", bench, 4);
    CHECK(test::read_file(dir.path() / "w1" / "manifest.txt") ==
          test::read_file(dir.path() / "w4" / "manifest.txt"));
    CHECK(serial.seconds / parallel.seconds > 1.0);
}

TEST_CASE("binary: usage, config and data errors map to documented codes") {
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("") == kExitUsage);
    CHECK(run_binary("augment") == kExitUsage);
    CHECK(run_binary("frobnicate") == kExitUsage);
    CHECK(run_binary("verify /nonexistent/manifest.txt") == kExitCheckFailed);
    // Unreadable manifest for augment is a runtime failure.
    CHECK(run_binary("augment /nonexistent/manifest.txt --out /tmp/ga_x") ==
          kExitRuntime);
}

TEST_CASE("binary: end-to-end with config file and env override") {
    test::TempDir dir("clibin");
    make_shrec_fixture(dir / "dataset", 2);
    test::write_file(dir / "config.json",
                     "{\n  \"version\": 1,\n  \"seed\": 4242,\n  \"copies\": 2,\n"
                     "  \"render\": { \"width\": 64, \"height\": 64 }\n}\n");

    const std::string base = (dir.path() / "dataset").string();
    REQUIRE(run_binary("ingest " + base + " --out " + (dir / "ing").string()) == 0);
    REQUIRE(run_binary("--config " + (dir / "config.json").string() + " render " +
                       (dir / "ing" / "index.txt").string() + " --out " +
                       (dir / "ren").string()) == 0);
    CHECK(read_png_size(dir.path() / "ren" / "images" /
                        fs::directory_iterator(dir.path() / "ren" / "images")
                            ->path()
                            .filename()) == std::pair{64, 64});

    // Seed and copies come from the config file.
    REQUIRE(run_binary("--config " + (dir / "config.json").string() + " augment " +
                       (dir / "ren" / "manifest.txt").string() + " --out " +
                       (dir / "aug").string()) == 0);
    Manifest manifest = read_manifest(dir.path() / "aug" / "manifest.txt");
    CHECK(manifest.global_seed == 4242);
    CHECK(manifest.copies_per_sample == 2);
    CHECK(manifest.entries.size() == 6);

    // Env var override path, flag beats config.
    const std::string env = "GESTAUG_CONFIG=" + (dir / "config.json").string() + " ";
    const std::string command =
        env + std::string(GESTAUG_CLI_PATH) + " augment " +
        (dir / "ren" / "manifest.txt").string() + " --out " +
        (dir / "aug2").string() + " --seed 1 >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
    manifest = read_manifest(dir.path() / "aug2" / "manifest.txt");
    CHECK(manifest.global_seed == 1);
    CHECK(manifest.copies_per_sample == 2);  // still from config via env

    // Bad config -> config error code.
    test::write_file(dir / "bad.json", "{ \"version\": 99 }");
    CHECK(run_binary("--config " + (dir / "bad.json").string() + " augment " +
                     (dir / "ren" / "manifest.txt").string() + " --out " +
                     (dir / "aug3").string()) == kExitConfig);
}

TEST_CASE("binary: rerunning a command is idempotent") {
    test::TempDir dir("clibin");
    make_shrec_fixture(dir / "dataset", 2);
    REQUIRE(run_binary("ingest " + (dir / "dataset").string() + " --out " +
                       (dir / "ing").string()) == 0);
    REQUIRE(run_binary("render " + (dir / "ing" / "index.txt").string() +
                       " --out " + (dir / "ren").string() +
                       " --width 64 --height 64") == 0);
    REQUIRE(run_binary("augment " + (dir / "ren" / "manifest.txt").string() +
                       " --seed 3 --out " + (dir / "a1").string()) == 0);
    REQUIRE(run_binary("augment " + (dir / "ren" / "manifest.txt").string() +
                       " --seed 3 --out " + (dir / "a2").string()) == 0);
    CHECK(test::read_file(dir.path() / "a1" / "manifest.txt") ==
          test::read_file(dir.path() / "a2" / "manifest.txt"));
    CHECK(run_binary("verify " + (dir / "a1" / "manifest.txt").string() +
                     " --replay all") == 0);
}
