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

#include "me/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace me {

namespace {

// The eight unit offsets in raster order of (dy, dx); doubles as the
// canonical tie order wherever several neighbors score equally.
constexpr int kOff8[8][2] = {
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
};

struct Window {
    int lo_x, hi_x, lo_y, hi_y;  // half-pel units, always even, lo <= 0 <= hi
};

Window halfpel_window(const BlockRect& rect, int width, int height, int range_pels) {
    Window w;
    w.lo_x = std::max(-2 * range_pels, -2 * rect.x0);
    w.hi_x = std::min(2 * range_pels, 2 * (width - rect.x0 - rect.size));
    w.lo_y = std::max(-2 * range_pels, -2 * rect.y0);
    w.hi_y = std::min(2 * range_pels, 2 * (height - rect.y0 - rect.size));
    return w;
}

// Shared machinery for the integer-pel block searches: window clipping,
// duplicate-position caching and unique-evaluation counting.
struct BlockMatcher {
    const Frame& cur;
    const Frame& ref;
    const BlockRect& rect;
    SearchStats& stats;
    int lo_x, hi_x, lo_y, hi_y;  // pel units
    std::unordered_map<int, std::int64_t> cache;

    BlockMatcher(const Frame& c, const Frame& r, const BlockRect& b, int range, SearchStats& s)
        : cur(c), ref(r), rect(b), stats(s) {
        lo_x = std::max(-range, -b.x0);
        hi_x = std::min(range, c.luma.width - b.x0 - b.size);
        lo_y = std::max(-range, -b.y0);
        hi_y = std::min(range, c.luma.height - b.y0 - b.size);
    }

    bool admissible(int dx, int dy) const {
        return dx >= lo_x && dx <= hi_x && dy >= lo_y && dy <= hi_y;
    }

    std::int64_t eval(int dx, int dy) {
        const int key = (dy + 512) * 1024 + (dx + 512);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const auto sad =
            static_cast<std::int64_t>(sad_texture(cur, ref, rect, MotionVector::from_pels(dx, dy)));
        cache.emplace(key, sad);
        ++stats.block_comparisons;
        return sad;
    }

    // Probes the eight neighbors of (cx,cy) at the given radius and returns
    // the best position; strict improvement only, raster tie order.
    void probe_ring(const int (*offs)[2], int n, int radius, int& cx, int& cy,
                    std::int64_t& best) {
        int bx = cx;
        int by = cy;
        for (int i = 0; i < n; ++i) {
            const int dx = cx + offs[i][0] * radius;
            const int dy = cy + offs[i][1] * radius;
            if (!admissible(dx, dy)) continue;
            const std::int64_t v = eval(dx, dy);
            if (v < best) {
                best = v;
                bx = dx;
                by = dy;
            }
        }
        cx = bx;
        cy = by;
    }
};

void require_inside(const Frame& cur, const BlockRect& rect) {
    if (rect.x0 < 0 || rect.y0 < 0 || rect.size <= 0 ||
        rect.x0 + rect.size > cur.luma.width || rect.y0 + rect.size > cur.luma.height) {
        throw std::invalid_argument("block rect outside the frame");
    }
}

double pels(int halfpel) { return 0.5 * halfpel; }

}  // namespace

const char* to_string(Algo a) {
    switch (a) {
        case Algo::ES: return "ES";
        case Algo::TSS: return "TSS";
        case Algo::FSS: return "FSS";
        case Algo::DS: return "DS";
        case Algo::PA: return "PA";
    }
    throw std::invalid_argument("unknown algorithm");
}

Algo algo_from_string(const std::string& name) {
    std::string up;
    up.reserve(name.size());
    for (char ch : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (up == "ES") return Algo::ES;
    if (up == "TSS") return Algo::TSS;
    if (up == "FSS" || up == "4SS") return Algo::FSS;
    if (up == "DS") return Algo::DS;
    if (up == "PA") return Algo::PA;
    throw std::invalid_argument("unknown algorithm: " + name);
}

void SearchConfig::validate() const {
    if (search_range < 1) throw std::invalid_argument("search_range must be >= 1");
    if (block_size != 8 && block_size != 16) throw std::invalid_argument("block_size must be 8 or 16");
    if (ref_distance < 1) throw std::invalid_argument("ref_distance must be >= 1");
}

void PrsConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (step != 1 && step != 2) throw std::invalid_argument("step must be 1 or 2 half-pels");
}

MotionField::MotionField(int cols_, int rows_, int block_size_)
    : cols(cols_),
      rows(rows_),
      block_size(block_size_),
      vectors(std::size_t(cols_) * rows_),
      types(std::size_t(cols_) * rows_, BlockType::Opaque) {
    if (cols_ <= 0 || rows_ <= 0) throw std::invalid_argument("empty motion field grid");
}

MotionVector clip_to_window(MotionVector v, const BlockRect& rect, int width, int height,
                            int range_pels) {
    const Window w = halfpel_window(rect, width, height, range_pels);
    return MotionVector{std::clamp(v.dx, w.lo_x, w.hi_x), std::clamp(v.dy, w.lo_y, w.hi_y)};
}

MotionVector full_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                         const SearchConfig& cfg, SearchStats& stats) {
    cfg.validate();
    require_inside(cur, rect);
    BlockMatcher m(cur, ref, rect, cfg.search_range, stats);
    std::int64_t best = -1;
    int bx = 0, by = 0, bman = 0;
    for (int dy = m.lo_y; dy <= m.hi_y; ++dy) {
        for (int dx = m.lo_x; dx <= m.hi_x; ++dx) {
            const std::int64_t v = m.eval(dx, dy);
            const int man = std::abs(dx) + std::abs(dy);
            if (best < 0 || v < best || (v == best && man < bman)) {
                best = v;
                bx = dx;
                by = dy;
                bman = man;
            }
        }
    }
    return MotionVector::from_pels(bx, by);
}

MotionVector tss_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        const SearchConfig& cfg, SearchStats& stats) {
    cfg.validate();
    require_inside(cur, rect);
    BlockMatcher m(cur, ref, rect, cfg.search_range, stats);
    int step = 1;
    while (step * 2 <= cfg.search_range) step *= 2;
    int cx = 0, cy = 0;
    std::int64_t best = m.eval(0, 0);
    for (; step >= 1; step /= 2) m.probe_ring(kOff8, 8, step, cx, cy, best);
    return MotionVector::from_pels(cx, cy);
}

MotionVector fss_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        const SearchConfig& cfg, SearchStats& stats) {
    cfg.validate();
    require_inside(cur, rect);
    BlockMatcher m(cur, ref, rect, cfg.search_range, stats);
    int cx = 0, cy = 0;
    std::int64_t best = m.eval(0, 0);
    for (int round = 0; round < 3; ++round) {
        const int px = cx, py = cy;
        m.probe_ring(kOff8, 8, 2, cx, cy, best);
        if (cx == px && cy == py) break;  // best stayed at center: go final
    }
    m.probe_ring(kOff8, 8, 1, cx, cy, best);
    return MotionVector::from_pels(cx, cy);
}

MotionVector ds_search(const Frame& cur, const Frame& ref, const BlockRect& rect,
                       const SearchConfig& cfg, SearchStats& stats) {
    cfg.validate();
    require_inside(cur, rect);
    static constexpr int kLdsp[8][2] = {
        {0, -2}, {-1, -1}, {1, -1}, {-2, 0}, {2, 0}, {-1, 1}, {1, 1}, {0, 2},
    };
    static constexpr int kSdsp[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
    BlockMatcher m(cur, ref, rect, cfg.search_range, stats);
    int cx = 0, cy = 0;
    std::int64_t best = m.eval(0, 0);
    for (;;) {
        const int px = cx, py = cy;
        m.probe_ring(kLdsp, 8, 1, cx, cy, best);
        if (cx == px && cy == py) break;
    }
    m.probe_ring(kSdsp, 4, 1, cx, cy, best);
    return MotionVector::from_pels(cx, cy);
}

CandidateSet gather_candidates(const MotionField& field_in_progress, const MotionField* prev_field,
                               int h, int v) {
    if (h < 0 || v < 0 || h >= field_in_progress.cols || v >= field_in_progress.rows) {
        throw std::out_of_range("block coordinates outside the motion field grid");
    }
    CandidateSet cs;
    if (h - 1 >= 0) cs.a = field_in_progress.at(h - 1, v);
    if (v - 1 >= 0) cs.b = field_in_progress.at(h, v - 1);
    if (h + 1 < field_in_progress.cols && v - 1 >= 0) cs.c = field_in_progress.at(h + 1, v - 1);
    if (prev_field != nullptr) {
        if (prev_field->cols != field_in_progress.cols ||
            prev_field->rows != field_in_progress.rows) {
            throw std::invalid_argument("previous motion field grid mismatch");
        }
        cs.t = prev_field->at(h, v);
    }
    return cs;
}

MotionVector brs_select(const Frame& cur, const Frame& ref, const AlphaPlane* cur_alpha,
                        const AlphaPlane* ref_alpha, const BlockRect& rect, BlockType btype,
                        const CandidateSet& cands, const SearchConfig& cfg,
                        const EstimateOptions& opts, SearchStats& stats) {
    cfg.validate();
    require_inside(cur, rect);
    if (btype == BlockType::Transparent) {
        throw std::invalid_argument("candidate selection on a transparent block");
    }
    if (btype == BlockType::Boundary && (cur_alpha == nullptr || ref_alpha == nullptr)) {
        throw std::invalid_argument("boundary block requires both alpha planes");
    }
    const MotionVector raw[4] = {cands.a, cands.b, cands.c, cands.t};
    const int gh = rect.x0 / rect.size;
    const int gv = rect.y0 / rect.size;
    MotionVector bestv;
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
        const MotionVector cv =
            clip_to_window(raw[i], rect, cur.luma.width, cur.luma.height, cfg.search_range);
        const bool shape_scored =
            btype == BlockType::Boundary &&
            (i < 3 || opts.boundary_temporal == BoundaryTemporal::Shape);
        double score;
        if (shape_scored) {
            // Shape SAD is integer-pel; snap half-pel candidates to the
            // nearest pel (stays inside the window: its bounds are even).
            const MotionVector fp = MotionVector::from_pels(
                static_cast<int>(std::llround(pels(cv.dx))), static_cast<int>(std::llround(pels(cv.dy))));
            score = static_cast<double>(sad_shape(*cur_alpha, *ref_alpha, rect, fp));
        } else {
            score = sad_texture(cur, ref, rect, cv);
        }
        ++stats.block_comparisons;
        if (opts.scoring_log != nullptr) {
            opts.scoring_log->push_back(
                {gh, gv, btype, i, shape_scored ? ScoreKind::Shape : ScoreKind::Texture});
        }
        if (i == 0 || score < best) {
            best = score;
            bestv = cv;
        }
    }
    return bestv;
}

Vec2 prs_update(const Frame& cur, const Frame& ref, int x, int y, MotionVector d_i,
                const PrsConfig& cfg) {
    const double e = dpd(cur, ref, x, y, d_i);
    const double ux = update_term(grad_central(cur, x, y, GradientAxis::Horizontal), cfg.theta);
    const double uy = update_term(grad_central(cur, x, y, GradientAxis::Vertical), cfg.theta);
    return Vec2{pels(d_i.dx) - cfg.epsilon * e * ux, pels(d_i.dy) - cfg.epsilon * e * uy};
}

MotionVector prs_refine(const Frame& cur, const Frame& ref, const BlockRect& rect,
                        MotionVector d0, const SearchConfig& scfg, const PrsConfig& cfg,
                        SearchStats& stats, std::vector<double>* descent_log) {
    scfg.validate();
    cfg.validate();
    require_inside(cur, rect);
    const Window win = halfpel_window(rect, cur.luma.width, cur.luma.height, scfg.search_range);
    const auto admissible = [&](MotionVector v) {
        return v.dx >= win.lo_x && v.dx <= win.hi_x && v.dy >= win.lo_y && v.dy <= win.hi_y;
    };
    std::unordered_map<int, double> cache;
    const auto cost = [&](MotionVector v) {
        const int key = (v.dy + 1024) * 4096 + (v.dx + 1024);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        // The aggregate displaced difference of the mirrored displacement is
        // exactly the texture SAD of the field vector itself.
        const double c = block_dpd_aggregate(cur, ref, rect, MotionVector{-v.dx, -v.dy});
        cache.emplace(key, c);
        ++stats.dpd_refinement_steps;
        return c;
    };

    MotionVector center = clip_to_window(d0, rect, cur.luma.width, cur.luma.height,
                                         scfg.search_range);
    double center_cost = cost(center);
    if (descent_log != nullptr) descent_log->push_back(center_cost);
    const double npix = double(rect.size) * rect.size;

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        if (center_cost == 0.0) break;  // already a global minimum of a nonnegative cost

        // Average the per-pixel update over the block to get the preferred
        // probing direction, then mirror it into the field convention.
        const MotionVector d_m{-center.dx, -center.dy};
        double sx = 0.0, sy = 0.0;
        for (int y = rect.y0; y < rect.y0 + rect.size; ++y) {
            for (int x = rect.x0; x < rect.x0 + rect.size; ++x) {
                const Vec2 d = prs_update(cur, ref, x, y, d_m, cfg);
                sx += d.x;
                sy += d.y;
            }
        }
        const double dir_x = -(sx / npix - pels(d_m.dx));
        const double dir_y = -(sy / npix - pels(d_m.dy));

        int order[8] = {0, 1, 2, 3, 4, 5, 6, 7};
        std::stable_sort(order, order + 8, [&](int lhs, int rhs) {
            const double dl = kOff8[lhs][0] * dir_x + kOff8[lhs][1] * dir_y;
            const double dr = kOff8[rhs][0] * dir_x + kOff8[rhs][1] * dir_y;
            return dl > dr;
        });

        MotionVector bestv = center;
        double best = center_cost;
        for (int idx : order) {
            const MotionVector cand{center.dx + kOff8[idx][0] * cfg.step,
                                    center.dy + kOff8[idx][1] * cfg.step};
            if (!admissible(cand)) continue;
            const double c = cost(cand);
            if (c < best) {
                best = c;
                bestv = cand;
            }
        }
        if (bestv == center) break;
        center = bestv;
        center_cost = best;
        if (descent_log != nullptr) descent_log->push_back(center_cost);
    }
    return center;
}

std::pair<MotionField, SearchStats> estimate_field(Algo algo, const Frame& cur, const Frame& ref,
                                                   const AlphaPlane* cur_alpha,
                                                   const AlphaPlane* ref_alpha,
                                                   const MotionField* prev_field,
                                                   const SearchConfig& cfg, const PrsConfig& prs,
                                                   const EstimateOptions& opts) {
    cfg.validate();
    prs.validate();
    if (cur.luma.width != ref.luma.width || cur.luma.height != ref.luma.height) {
        throw std::invalid_argument("current and reference frame dimensions differ");
    }
    const std::vector<BlockRect> grid = block_grid(cur, cfg.block_size);
    const int cols = cur.luma.width / cfg.block_size;
    const int rows = cur.luma.height / cfg.block_size;
    MotionField field(cols, rows, cfg.block_size);
    field.cur_index = cur.index;
    field.ref_index = ref.index;
    if (prev_field != nullptr && (prev_field->cols != cols || prev_field->rows != rows)) {
        throw std::invalid_argument("previous motion field grid mismatch");
    }

    PrsConfig prs_eff = prs;
    if (cfg.halfpel) prs_eff.step = 1;

    SearchStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    for (const BlockRect& rect : grid) {
        const BlockType bt = classify_block(cur_alpha, rect);
        field.types[std::size_t(rect.grid_v) * cols + rect.grid_h] = bt;
        switch (bt) {
            case BlockType::Opaque: ++stats.blocks_opaque; break;
            case BlockType::Boundary: ++stats.blocks_boundary; break;
            case BlockType::Transparent: ++stats.blocks_transparent; break;
        }
        if (bt == BlockType::Transparent) continue;  // zero vector, no comparisons

        MotionVector v;
        switch (algo) {
            case Algo::ES: v = full_search(cur, ref, rect, cfg, stats); break;
            case Algo::TSS: v = tss_search(cur, ref, rect, cfg, stats); break;
            case Algo::FSS: v = fss_search(cur, ref, rect, cfg, stats); break;
            case Algo::DS: v = ds_search(cur, ref, rect, cfg, stats); break;
            case Algo::PA: {
                const CandidateSet cs =
                    gather_candidates(field, prev_field, rect.grid_h, rect.grid_v);
                const MotionVector v0 = brs_select(cur, ref, cur_alpha, ref_alpha, rect, bt, cs,
                                                   cfg, opts, stats);
                v = prs_refine(cur, ref, rect, v0, cfg, prs_eff, stats);
                break;
            }
        }
        field.at(rect.grid_h, rect.grid_v) = v;
    }
    stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - t0);
    return {std::move(field), stats};
}

}  // namespace me
