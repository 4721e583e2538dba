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

#ifndef ME_ESTIMATORS_HPP
#define ME_ESTIMATORS_HPP

#include <string>
#include <utility>
#include <vector>

#include "me/frame.hpp"
#include "me/metrics.hpp"

namespace me {

enum class Algo { ES, TSS, FSS, DS, PA };

const char* to_string(Algo a);
Algo algo_from_string(const std::string& name);

struct SearchConfig {
    int search_range = 7;  // S, pels
    int block_size = 16;   // 16 for the block-matching baselines, 8 for PA
    int ref_distance = 2;  // frames between current and reference
    bool halfpel = false;  // enables the half-pel refinement step

    void validate() const;
};

struct PrsConfig {
    double epsilon = 0.5;   // convergence factor
    double theta = 2.0;     // gradient threshold
    int max_iterations = 4; // refinement cap per block
    int step = 2;           // grid step in half-pel units: 2 = integer, 1 = half

    void validate() const;
};

/// Which error measure scores the temporal candidate on boundary blocks.
enum class BoundaryTemporal { Texture, Shape };

/// Motion vectors and block types for one frame pair, raster order.
struct MotionField {
    int cols = 0;
    int rows = 0;
    int block_size = 16;
    int cur_index = 0;
    int ref_index = 0;
    std::vector<MotionVector> vectors;
    std::vector<BlockType> types;

    MotionField() = default;
    MotionField(int cols_, int rows_, int block_size_);

    MotionVector& at(int h, int v) { return vectors[std::size_t(v) * cols + h]; }
    MotionVector at(int h, int v) const { return vectors[std::size_t(v) * cols + h]; }
    BlockType type_at(int h, int v) const { return types[std::size_t(v) * cols + h]; }

    bool operator==(const MotionField&) const = default;
};

/// The four block-recursive candidates: left, upper and upper-right spatial
/// neighbors plus the temporal vector from the previous field. Missing
/// entries are the zero vector.
struct CandidateSet {
    MotionVector a;  // (h-1, v)
    MotionVector b;  // (h, v-1)
    MotionVector c;  // (h+1, v-1)
    MotionVector t;  // same block, previous field
};

enum class ScoreKind : std::uint8_t { Texture, Shape };

/// One candidate evaluation, recorded when a scoring log is attached.
struct ScoreEvent {
    int h = 0;
    int v = 0;
    BlockType type = BlockType::Opaque;
    int candidate = 0;  // 0=A 1=B 2=C 3=T
    ScoreKind kind = ScoreKind::Texture;
};

struct EstimateOptions {
    BoundaryTemporal boundary_temporal = BoundaryTemporal::Texture;
    std::vector<ScoreEvent>* scoring_log = nullptr;
};

/// Clamps a half-pel vector so the displaced rect stays inside both the
/// +/-range search box and the frame. The zero vector is always admissible.
MotionVector clip_to_window(MotionVector v, const BlockRect& rect, int width, int height,
                            int range_pels);

/// All five searches return the winning vector in half-pel units and add
/// their block-level error evaluations to `stats`.
MotionVector full_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                         const SearchConfig& cfg, SearchStats& stats);
MotionVector tss_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        const SearchConfig& cfg, SearchStats& stats);
MotionVector fss_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        const SearchConfig& cfg, SearchStats& stats);
MotionVector ds_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                       const SearchConfig& cfg, SearchStats& stats);

/// Collects A/B/C from the in-progress field (raster order guarantees they
/// are already computed) and T from the previous field; out-of-grid
/// neighbors and a missing previous field contribute the zero vector.
CandidateSet gather_candidates(const MotionField& field_in_progress, const MotionField* prev_field,
                               int h, int v);

/// Block-recursive selection among the four candidates (clipped to the
/// search window). Boundary blocks score A/B/C with shape SAD and T per
/// `opts.boundary_temporal`; opaque blocks score everything with texture
/// SAD. Ties break in order A, B, C, T. Counts four comparisons.
MotionVector brs_select(const Frame& cur, const Frame& ref, const AlphaPlane* cur_alpha,
                        const AlphaPlane* ref_alpha, const BlockRect& rect, BlockType btype,
                        const CandidateSet& cands, const SearchConfig& cfg,
                        const EstimateOptions& opts, SearchStats& stats);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// One pel-recursive update at a single pixel: d = d_i - eps * DPD(d_i,x,y) *
/// [u_x, u_y], in pel units and in the displaced-pixel-difference convention
/// of dpd(). The caller quantizes to the half-pel grid.
Vec2 prs_update(const Frame& cur, const Frame& ref, int x, int y, MotionVector d_i,
                const PrsConfig& cfg);

/// Pel-recursive refinement of the block-recursive winner `d0` (field
/// convention, half-pel units): iterated descent on the aggregate displaced
/// pixel difference over the current vector's eight neighbors at grid
/// distance cfg.step, probing the update direction of prs_update (averaged
/// over the block) first. Recenters on the strict minimizer and stops when
/// the center is minimal or after cfg.max_iterations. Every aggregate
/// evaluation increments stats.dpd_refinement_steps. When `descent_log` is
/// given it receives the aggregate cost of every accepted center, the
/// initial one included.
MotionVector prs_refine(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        MotionVector d0, const SearchConfig& scfg, const PrsConfig& cfg,
                        SearchStats& stats, std::vector<double>* descent_log = nullptr);

/// Runs one estimator over the whole frame pair in raster order. Transparent
/// blocks get the zero vector and no comparisons; baselines search every
/// non-transparent block; PA runs brs_select followed by prs_refine.
/// `prev_field` feeds PA's temporal candidates and may be null.
std::pair<MotionField, SearchStats> estimate_field(Algo algo, const Frame& cur, const Frame& ref,
                                                   const AlphaPlane* cur_alpha,
                                                   const AlphaPlane* ref_alpha,
                                                   const MotionField* prev_field,
                                                   const SearchConfig& cfg, const PrsConfig& prs,
                                                   const EstimateOptions& opts = {});

}  // namespace me

#endif  // ME_ESTIMATORS_HPP
