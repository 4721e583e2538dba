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

#ifndef ME_BENCH_HPP
#define ME_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "me/compensation.hpp"
#include "me/estimators.hpp"
#include "me/frame.hpp"
#include "me/metrics.hpp"
#include "me/video_io.hpp"

namespace me {

struct ExperimentConfig {
    SequenceSource source;
    MaskSource masks;  // optional: masks.present()
    std::vector<Algo> algos;
    SearchConfig search;
    PrsConfig prs;
    BoundaryTemporal boundary_temporal = BoundaryTemporal::Texture;
    bool block_size_auto = true;  // 16 for block matchers, 8 for PA; false = honor search.block_size
    std::string csv_path;         // empty: no CSV
    std::string dump_dir;         // empty: no image/vector dumps
    int frame_limit = 0;          // 0: whole sequence

    void validate() const;
    int frames_used() const;  // after applying frame_limit
};

/// One CSV row: metrics of a single (frame, algorithm) estimation.
struct FrameReport {
    int frame = 0;
    Algo algo = Algo::ES;
    PsnrResult psnr;
    // comparisons / estimated blocks; absent when every block is transparent
    std::optional<double> avg_search_points;
    std::int64_t comparisons = 0;
    std::int64_t dpd_steps = 0;
    std::int64_t n_opaque = 0;
    std::int64_t n_boundary = 0;
    std::int64_t n_transparent = 0;
    std::int64_t elapsed_us = 0;

    std::int64_t blocks_estimated() const { return n_opaque + n_boundary; }
};

/// Per-algorithm aggregates over all estimated frame pairs.
struct AlgoSummary {
    Algo algo = Algo::ES;
    int frame_pairs = 0;
    double mean_mse = 0.0;
    std::optional<double> mean_psnr_db;         // mean of finite per-frame dB values
    std::optional<double> psnr_db_of_mean_mse;  // dB of the mean mse
    std::optional<double> mean_psnr_linear;     // mean of per-frame 255^2/mse
    // (comparisons + refinement steps) per estimated block, whole run
    double avg_search_points = 0.0;
    std::optional<double> indicator;  // quality/cost figure of merit
    std::int64_t total_comparisons = 0;
    std::int64_t total_dpd_steps = 0;
    std::int64_t total_blocks_estimated = 0;
    std::int64_t total_elapsed_us = 0;
};

struct ExperimentResult {
    std::vector<FrameReport> reports;    // CSV row order
    std::vector<AlgoSummary> summaries;  // one per configured algorithm
};

/// CSV header written by run_experiment.
extern const char* const kCsvHeader;

/// Formats one report as a CSV row (no newline). Doubles are printed with
/// enough digits to round-trip; the infinite-PSNR sentinel is "inf", the
/// all-transparent sentinel for avg_search_points is "nan".
std::string csv_row(const FrameReport& r);

/// Runs every configured algorithm over the sequence: for each frame index
/// tau >= ref_distance the reference is frame tau - ref_distance; PA threads
/// the previous pair's field into its temporal candidates. Writes the CSV
/// incrementally when configured and dumps per-algorithm artifacts when a
/// dump directory is given. Deterministic apart from elapsed columns.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes prediction, residual visualization and motion vectors for one
/// frame: pred_%04d.pgm, resid_%04d.pgm, vectors_%04d.txt ("h v dx dy" per
/// line, half-pel units, raster order). The index is cur.index.
void dump_artifacts(const Frame& cur, const Frame& pred, const ResidualPlane& resid,
                    const MotionField& field, const std::string& dir);

/// Parses a vectors_%04d.txt file back into a motion field (vectors only;
/// block types are not stored in the file).
MotionField read_vectors_file(const std::string& path, int block_size);

// --- Synthetic sequences -------------------------------------------------

enum class SynthKind { GlobalTranslation, MovingSquare, AcceleratingObject };

SynthKind synth_kind_from_string(const std::string& name);

struct SynthParams {
    int width = 176;
    int height = 144;
    int frames = 10;
    int dx = 3;        // per-frame velocity, pels (initial velocity for the
    int dy = -2;       // accelerating object)
    int square = 48;   // object edge length for the square kinds
    int accel = 1;     // per-frame velocity increment (accelerating object)
    int vmax = 3;      // velocity magnitude cap (accelerating object)
    std::uint64_t seed = 1;

    void validate(SynthKind kind) const;
};

/// Seeded noise smoothed until block searches see a single-basin error
/// surface; the texture every synthetic kind is built from.
Plane smooth_noise(int width, int height, std::uint64_t seed);

/// Object top-left corner at frame t for the square kinds (bouncing off the
/// borders so the object always stays fully inside).
std::pair<int, int> synth_object_position(SynthKind kind, const SynthParams& p, int t);

/// In-memory generation: frames[t] and masks[t] of the synthetic sequence.
/// GlobalTranslation masks are fully opaque.
std::vector<Frame> synth_frames(SynthKind kind, const SynthParams& p);
std::vector<AlphaPlane> synth_masks(SynthKind kind, const SynthParams& p);

/// Writes the sequence as headerless I420 plus optional PGM masks named by
/// the printf-style pattern; empty pattern skips masks.
void generate_synthetic(SynthKind kind, const SynthParams& p, const std::string& video_path,
                        const std::string& mask_pattern);

}  // namespace me

#endif  // ME_BENCH_HPP
