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

#ifndef ME_METRICS_HPP
#define ME_METRICS_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "me/frame.hpp"

namespace me {

/// Luma PSNR. mse == 0 is the distinguished infinite case: the dB and linear
/// fields are absent and CSV emission writes "inf".
struct PsnrResult {
    double mse = 0.0;
    std::optional<double> psnr_db;
    std::optional<double> psnr_linear;  // 255^2 / mse

    bool infinite() const { return !psnr_db.has_value(); }
};

/// Per-run instrumentation. Totals are sums over blocks; transparent blocks
/// contribute zero comparisons.
struct SearchStats {
    std::int64_t block_comparisons = 0;    // block-level error evaluations
    std::int64_t dpd_refinement_steps = 0; // aggregate-DPD evaluations in PRS
    std::int64_t blocks_opaque = 0;
    std::int64_t blocks_boundary = 0;
    std::int64_t blocks_transparent = 0;
    std::chrono::microseconds elapsed{0};

    std::int64_t blocks_total() const {
        return blocks_opaque + blocks_boundary + blocks_transparent;
    }
    std::int64_t blocks_estimated() const { return blocks_opaque + blocks_boundary; }
    std::int64_t search_points() const { return block_comparisons + dpd_refinement_steps; }

    void merge(const SearchStats& other) {
        block_comparisons += other.block_comparisons;
        dpd_refinement_steps += other.dpd_refinement_steps;
        blocks_opaque += other.blocks_opaque;
        blocks_boundary += other.blocks_boundary;
        blocks_transparent += other.blocks_transparent;
        elapsed += other.elapsed;
    }
};

/// Texture SAD of the block at `rect` in `cur` against `ref` displaced by
/// `mv` (half-pel units): sum |cur(x,y) - ref(x+dx, y+dy)|. Half-pel vectors
/// use bilinear sampling; out-of-frame reads replicate edges.
double sad_texture(const Frame& cur, const Frame& ref, const BlockRect& rect, MotionVector mv);

/// Shape SAD over binary alpha planes, integer-pel only; always a multiple
/// of 255 (255 per mismatching pixel).
std::int64_t sad_shape(const AlphaPlane& cur_alpha, const AlphaPlane& ref_alpha,
                       const BlockRect& rect, MotionVector mv);

/// Displaced pixel difference: cur(x,y) - ref(x - dx, y - dy), the reference
/// read displaced *against* the candidate (half-pel sampling). Positive when
/// the current pixel exceeds the displaced reference.
double dpd(const Frame& cur, const Frame& ref, int x, int y, MotionVector d);

/// Sum of |dpd| over the rect; the quantity minimized by the pel-recursive
/// refinement. For integer-pel d this equals sad_texture at the mirrored
/// vector (-dx, -dy).
double block_dpd_aggregate(const Frame& cur, const Frame& ref, const BlockRect& rect,
                           MotionVector d);

enum class GradientAxis { Horizontal, Vertical };

/// Central difference (f(x+1,y) - f(x-1,y)) / 2, clamped at borders; the
/// vertical axis exchanges the roles of x and y.
double grad_central(const Frame& frame, int x, int y, GradientAxis axis);

/// Gradient reciprocal gate: 0 when |gradient| < theta, else 1/gradient.
double update_term(double gradient, double theta);

/// Full-frame luma PSNR between a frame and its reconstruction.
PsnrResult psnr(const Frame& cur, const Frame& recon);

/// Quality/cost indicator: psnr_linear * (2s+1)^2 / c, where c is the average
/// number of compared blocks and s the search range in pels.
double figure_of_merit(double psnr_linear, int s, double c);

}  // namespace me

#endif  // ME_METRICS_HPP
