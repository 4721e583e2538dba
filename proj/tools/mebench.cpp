/*
 * Copyright 2026 The mebench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Benchmark harness: runs the block-matching searches and the two-stage
// recursive estimator over raw I420/Y4M sequences (or generated synthetic
// ones), writing per-frame CSV metrics and optional image dumps.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "me/bench.hpp"

namespace {

void print_summary(const me::ExperimentResult& result) {
    std::printf("%-5s %8s %12s %12s %14s %12s %12s\n", "algo", "pairs", "psnr_mean", "psnr_agg",
                "search_points", "indicator", "elapsed_ms");
    for (const me::AlgoSummary& s : result.summaries) {
        const auto opt = [](const std::optional<double>& v) {
            char buf[32];
            if (v) {
                std::snprintf(buf, sizeof buf, "%.4f", *v);
            } else {
                std::snprintf(buf, sizeof buf, "inf");
            }
            return std::string(buf);
        };
        std::printf("%-5s %8d %12s %12s %14.4f %12s %12.3f\n", me::to_string(s.algo),
                    s.frame_pairs, opt(s.mean_psnr_db).c_str(),
                    opt(s.psnr_db_of_mean_mse).c_str(), s.avg_search_points,
                    opt(s.indicator).c_str(), s.total_elapsed_us / 1000.0);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motion estimation benchmark"};

    std::string input;
    bool y4m = false;
    int width = 176;
    int height = 144;
    std::string mask_pattern;
    std::vector<std::string> algo_names;
    me::SearchConfig search;
    me::PrsConfig prs;
    std::string boundary_temporal = "texture";
    int frames = 0;
    std::string csv_path;
    std::string dump_dir;
    std::string synth;
    std::uint64_t seed = 1;
    int block_size = 0;  // 0: per-algorithm default (16, or 8 for PA)

    app.add_option("--input", input, "sequence path (raw I420 or Y4M); synthetic output path");
    app.add_flag("--y4m", y4m, "input is a Y4M file (dimensions from its header)");
    app.add_option("--width", width, "frame width for raw input / synthetics");
    app.add_option("--height", height, "frame height for raw input / synthetics");
    app.add_option("--mask-pattern", mask_pattern,
                   "printf-style per-frame mask path, e.g. masks/m%04d.pgm");
    app.add_option("--algo", algo_names, "algorithm to run: ES, TSS, FSS, DS, PA (repeatable)");
    app.add_option("--search-range", search.search_range, "search range S in pels");
    app.add_option("--block-size", block_size, "block size (default: 16, 8 for PA)");
    app.add_option("--ref-distance", search.ref_distance, "frames between current and reference");
    app.add_flag("--halfpel", search.halfpel, "half-pel refinement step");
    app.add_option("--epsilon", prs.epsilon, "refinement convergence factor");
    app.add_option("--theta", prs.theta, "gradient threshold");
    app.add_option("--max-iter", prs.max_iterations, "refinement iteration cap per block");
    app.add_option("--boundary-temporal", boundary_temporal,
                   "error measure for the temporal candidate on boundary blocks")
        ->check(CLI::IsMember({"texture", "shape"}));
    app.add_option("--frames", frames, "frame count limit (and synthetic sequence length)");
    app.add_option("--csv", csv_path, "per-frame metrics CSV output path");
    app.add_option("--dump-dir", dump_dir, "directory for prediction/residual/vector dumps");
    app.add_option("--synth", synth,
                   "generate a synthetic sequence first: global-translation, moving-square, "
                   "accelerating-object");
    app.add_option("--seed", seed, "synthetic texture seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (input.empty()) throw std::invalid_argument("--input is required");

        if (!synth.empty()) {
            const me::SynthKind kind = me::synth_kind_from_string(synth);
            me::SynthParams params;
            params.width = width;
            params.height = height;
            if (frames > 0) params.frames = frames;
            params.seed = seed;
            if (kind != me::SynthKind::GlobalTranslation) {
                params.dx = 2;
                params.dy = 1;
            }
            me::generate_synthetic(kind, params, input, mask_pattern);
            std::printf("wrote %d synthetic frames to %s\n", params.frames, input.c_str());
            if (algo_names.empty()) return 0;
        }

        me::ExperimentConfig cfg;
        cfg.source = y4m ? me::open_y4m(input) : me::open_i420(input, width, height);
        cfg.masks.pattern = mask_pattern;
        for (const std::string& name : algo_names) cfg.algos.push_back(me::algo_from_string(name));
        cfg.search = search;
        if (block_size > 0) {
            cfg.search.block_size = block_size;
            cfg.block_size_auto = false;
        }
        cfg.prs = prs;
        cfg.boundary_temporal = boundary_temporal == "shape" ? me::BoundaryTemporal::Shape
                                                             : me::BoundaryTemporal::Texture;
        cfg.csv_path = csv_path;
        cfg.dump_dir = dump_dir;
        cfg.frame_limit = frames;
        if (cfg.algos.empty()) throw std::invalid_argument("--algo is required to run");

        const me::ExperimentResult result = me::run_experiment(cfg);
        print_summary(result);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
