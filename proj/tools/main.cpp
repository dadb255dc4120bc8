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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "gestaug/commands.hpp"
#include "gestaug/config.hpp"

namespace {

using namespace gestaug;
namespace cli = gestaug::cli;

template <typename T>
T pick(const std::optional<T>& flag, const T& config_value) {
    return flag ? *flag : config_value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gestaug - deterministic augmentation toolkit for skeleton gesture "
        "datasets"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    app.add_option("--config", config_path,
                   "JSON config file (see README); flags override it")
        ->envname("GESTAUG_CONFIG");

    // Values that may come from the config file are optionals; the
    // effective value is flag, else config, else built-in default.
    std::optional<std::uint64_t> seed;
    std::optional<int> copies, workers, png_compression, fill;
    std::optional<std::string> pivot, view;
    std::optional<int> render_width, render_height, render_radius;
    std::optional<double> render_margin;

    // --- ingest ---
    cli::IngestOptions ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse a dataset tree into normalized form");
    ingest_cmd->add_option("dataset_dir", ingest.dataset_dir, "dataset root")
        ->required();
    ingest_cmd->add_option("--out", ingest.out_dir, "output directory")->required();
    ingest_cmd->add_option("--profile", ingest.profile, "shrec17 or generic")
        ->check(CLI::IsMember({"shrec17", "generic"}));
    ingest_cmd->add_option("--joints", ingest.joints, "joints per frame");
    ingest_cmd->add_option("--classes", ingest.classes,
                           "class count for generic single-scheme labels");

    // --- render ---
    cli::RenderCmdOptions render;
    bool render_no_bones = false;
    auto* render_cmd =
        app.add_subcommand("render", "render sequences to spatiotemporal images");
    render_cmd->add_option("index", render.index_path, "index file from ingest")
        ->required();
    render_cmd->add_option("--out", render.out_dir, "output directory")->required();
    render_cmd->add_option("--view", view,
                           "top_down | front_away | side_left | custom:<az>,<el>");
    render_cmd->add_option("--scheme", render.label_scheme, "label scheme: 14 or 28");
    render_cmd->add_option("--width", render_width, "canvas width");
    render_cmd->add_option("--height", render_height, "canvas height");
    render_cmd->add_option("--radius", render_radius, "joint disk radius");
    render_cmd->add_option("--margin", render_margin, "canvas margin fraction");
    render_cmd->add_flag("--no-bones", render_no_bones, "draw joints only");
    render_cmd->add_option("--png-compression", png_compression, "zlib level 0-9");

    // --- augment ---
    cli::AugmentOptions augment;
    bool no_crop = false, no_rotate = false, no_zoom = false;
    bool no_brightness_contrast = false, no_crop_resize = false;
    bool hard_link = false;
    auto* augment_cmd =
        app.add_subcommand("augment", "expand a rendered dataset 1+copies times");
    augment_cmd->add_option("manifest", augment.manifest_path, "rendered manifest")
        ->required();
    augment_cmd->add_option("--out", augment.out_dir, "output directory")->required();
    augment_cmd->add_option("--seed", seed, "global seed");
    augment_cmd->add_option("--copies", copies, "augmented copies per sample");
    augment_cmd->add_option("--workers", workers, "worker threads");
    augment_cmd->add_flag("--no-crop", no_crop, "ablation: disable cropping");
    augment_cmd->add_flag("--no-rotate", no_rotate, "ablation: disable rotation");
    augment_cmd->add_flag("--no-zoom", no_zoom, "ablation: disable zoom");
    augment_cmd->add_flag("--no-brightness-contrast", no_brightness_contrast,
                          "ablation: disable brightness/contrast");
    augment_cmd->add_flag("--no-crop-resize", no_crop_resize,
                          "keep crop windows instead of resizing back");
    augment_cmd->add_option("--fill", fill, "fill value for rotate/zoom borders");
    augment_cmd->add_option("--pivot", pivot, "contrast pivot: fixed or mean")
        ->check(CLI::IsMember({"fixed", "mean"}));
    augment_cmd->add_flag("--hard-link", hard_link,
                          "hard-link originals instead of copying");
    augment_cmd->add_option("--png-compression", png_compression, "zlib level 0-9");

    // --- baseline ---
    cli::BaselineOptions baseline;
    auto* baseline_cmd =
        app.add_subcommand("baseline", "emit a MixUp or CutMix mixed dataset");
    baseline_cmd->add_option("manifest", baseline.manifest_path, "rendered manifest")
        ->required();
    baseline_cmd->add_option("--out", baseline.out_dir, "output directory")
        ->required();
    baseline_cmd->add_option("--method", baseline.method, "mixup or cutmix")
        ->check(CLI::IsMember({"mixup", "cutmix"}));
    baseline_cmd->add_option("--pairs", baseline.pairs,
                             "mixed samples to emit (default: one per input)");
    baseline_cmd->add_option("--seed", seed, "global seed");
    baseline_cmd->add_option("--png-compression", png_compression, "zlib level 0-9");

    // --- stats ---
    cli::StatsOptions stats;
    std::optional<std::string> stats_csv;
    auto* stats_cmd =
        app.add_subcommand("stats", "parameter distribution report for a manifest");
    stats_cmd->add_option("manifest", stats.manifest_path, "augmented manifest")
        ->required();
    stats_cmd->add_option("--csv", stats_csv, "write histogram CSV here");
    stats_cmd->add_option("--bins", stats.bins, "histogram bins");

    // --- verify ---
    cli::VerifyOptions verify;
    std::string replay = "one";
    auto* verify_cmd =
        app.add_subcommand("verify", "integrity-check a generated dataset");
    verify_cmd->add_option("manifest", verify.manifest_path, "manifest to check")
        ->required();
    verify_cmd->add_option("--replay", replay,
                           "re-derive augmented images: none, one or all")
        ->check(CLI::IsMember({"none", "one", "all"}));

    // --- bench ---
    cli::BenchOptions bench;
    auto* bench_cmd =
        app.add_subcommand("bench", "time full expansion runs per worker count");
    bench_cmd->add_option("manifest", bench.manifest_path, "rendered manifest")
        ->required();
    bench_cmd->add_option("--out", bench.out_dir, "scratch output directory")
        ->required();
    bench_cmd
        ->add_option("--workers", bench.worker_counts, "worker counts to compare")
        ->delimiter(',');
    bench_cmd->add_option("--seed", seed, "global seed");
    bench_cmd->add_option("--copies", copies, "augmented copies per sample");
    bench_cmd->add_option("--png-compression", png_compression, "zlib level 0-9");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        AppConfig config = resolve_config(
            config_path ? std::optional<std::filesystem::path>(*config_path)
                        : std::nullopt);

        ChainOptions chain = config.chain_options();
        chain.fill = static_cast<std::uint8_t>(pick(fill, static_cast<int>(chain.fill)));
        if (pivot) {
            chain.contrast_pivot = *pivot == "mean" ? ContrastPivot::kImageMean
                                                    : ContrastPivot::kFixed;
        }
        if (no_crop_resize) chain.crop_resize = false;
        const int effective_png = pick(png_compression, config.png_compression);

        if (*ingest_cmd) {
            return cli::cmd_ingest(ingest, std::cout, std::cerr);
        }
        if (*render_cmd) {
            render.view = viewpoint_from_string(pick(view, config.view));
            render.settings = config.render;
            if (render_width) render.settings.width = *render_width;
            if (render_height) render.settings.height = *render_height;
            if (render_radius) render.settings.joint_radius = *render_radius;
            if (render_margin) render.settings.margin = *render_margin;
            if (render_no_bones) render.settings.draw_bones = false;
            render.png_compression = effective_png;
            return cli::cmd_render(render, std::cout, std::cerr);
        }
        if (*augment_cmd) {
            augment.pipeline.seed = pick(seed, config.seed);
            augment.pipeline.copies = pick(copies, config.copies);
            augment.pipeline.workers = pick(workers, config.workers);
            augment.pipeline.png_compression = effective_png;
            augment.pipeline.hard_link_originals = hard_link;
            chain.enable_crop = !no_crop;
            chain.enable_rotate = !no_rotate;
            chain.enable_zoom = !no_zoom;
            chain.enable_brightness_contrast = !no_brightness_contrast;
            augment.pipeline.chain = chain;
            return cli::cmd_augment(augment, std::cout, std::cerr);
        }
        if (*baseline_cmd) {
            baseline.seed = pick(seed, config.seed);
            baseline.png_compression = effective_png;
            return cli::cmd_baseline(baseline, std::cout, std::cerr);
        }
        if (*stats_cmd) {
            if (stats_csv) stats.csv_path = *stats_csv;
            return cli::cmd_stats(stats, std::cout, std::cerr);
        }
        if (*verify_cmd) {
            verify.replay = replay == "none"  ? ReplayMode::kNone
                            : replay == "all" ? ReplayMode::kAll
                                              : ReplayMode::kOne;
            return cli::cmd_verify(verify, std::cout, std::cerr);
        }
        if (*bench_cmd) {
            bench.seed = pick(seed, config.seed);
            bench.copies = pick(copies, config.copies);
            bench.chain = chain;
            bench.png_compression = effective_png;
            return cli::cmd_bench(bench, std::cout, std::cerr);
        }
    } catch (...) {
        return cli::exit_code_for_current_exception(std::cerr);
    }
    return cli::kExitUsage;
}
