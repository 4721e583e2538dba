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

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "me/bench.hpp"
#include "me/estimators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace me;

namespace {

SearchConfig cfg16() {
    SearchConfig c;
    c.block_size = 16;
    return c;
}

const BlockRect kInterior{24, 24, 16, 0, 0};

}  // namespace

TEST_CASE("algorithm names round-trip") {
    for (Algo a : {Algo::ES, Algo::TSS, Algo::FSS, Algo::DS, Algo::PA}) {
        CHECK(algo_from_string(to_string(a)) == a);
    }
    CHECK(algo_from_string("es") == Algo::ES);
    CHECK(algo_from_string("4ss") == Algo::FSS);
    CHECK_THROWS_AS(algo_from_string("NSTSS"), std::invalid_argument);
}

TEST_CASE("configuration invariants are enforced") {
    SearchConfig s;
    CHECK_NOTHROW(s.validate());
    s.search_range = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SearchConfig{};
    s.block_size = 12;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SearchConfig{};
    s.ref_distance = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    PrsConfig p;
    CHECK_NOTHROW(p.validate());
    p.epsilon = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PrsConfig{};
    p.theta = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PrsConfig{};
    p.step = 3;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PrsConfig{};
    p.max_iterations = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("window clipping keeps vectors inside frame and range") {
    const BlockRect corner{0, 0, 16, 0, 0};
    const BlockRect last{48, 48, 16, 3, 3};

    // interior vector untouched
    CHECK(clip_to_window(MotionVector::from_pels(3, -2), kInterior, 64, 64, 7) ==
          MotionVector::from_pels(3, -2));
    // corner block: negative displacements would leave the frame
    CHECK(clip_to_window(MotionVector::from_pels(-5, -5), corner, 64, 64, 7) ==
          MotionVector::from_pels(0, 0));
    // range bound applies on the open side
    CHECK(clip_to_window(MotionVector::from_pels(10, 0), corner, 64, 64, 7) ==
          MotionVector::from_pels(7, 0));
    // trailing block: positive displacements clipped to the frame edge
    CHECK(clip_to_window(MotionVector::from_pels(5, 5), last, 64, 64, 7) ==
          MotionVector::from_pels(0, 0));
    // half-pel component survives when admissible
    CHECK(clip_to_window(MotionVector{3, -1}, kInterior, 64, 64, 7) == MotionVector{3, -1});
    // zero is always admissible
    CHECK(clip_to_window(MotionVector{}, corner, 64, 64, 7) == MotionVector{});
}

TEST_CASE("exhaustive search returns the brute-force minimum") {
    const Plane base = testutil::uniform_noise(64, 64, 100);
    auto [cur, ref] = testutil::translated_pair(base, 3, -2);
    SearchStats st;
    const MotionVector v = full_search(cur, ref, kInterior, cfg16(), st);
    CHECK(v == MotionVector::from_pels(3, -2));
    CHECK(st.block_comparisons == 225);  // unclipped (2*7+1)^2 window

    const auto want = oracle::full_min(cur, ref, kInterior.x0, kInterior.y0, 16, 7);
    CHECK(want.dx == 3);
    CHECK(want.dy == -2);
    CHECK(want.sad == 0);
}

TEST_CASE("exhaustive search clips the window at the frame corner") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 101));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 102));
    const BlockRect corner{0, 0, 16, 0, 0};
    SearchStats st;
    const MotionVector v = full_search(cur, ref, corner, cfg16(), st);
    const auto want = oracle::full_min(cur, ref, 0, 0, 16, 7);
    CHECK(st.block_comparisons == want.positions);
    CHECK(st.block_comparisons == 64);  // 8x8 after clipping
    CHECK(double(want.sad) == sad_texture(cur, ref, corner, v));
}

TEST_CASE("exhaustive search prefers the smallest displacement on ties") {
    const Frame flat_cur = make_frame(Plane(64, 64, 77));
    const Frame flat_ref = make_frame(Plane(64, 64, 77));
    SearchStats st;
    CHECK(full_search(flat_cur, flat_ref, kInterior, cfg16(), st) == MotionVector{});
}

TEST_CASE("identical frames pin every search to the zero vector") {
    const Frame f = make_frame(testutil::uniform_noise(64, 64, 103));
    SearchStats es, ts, fs, ds;
    CHECK(full_search(f, f, kInterior, cfg16(), es) == MotionVector{});
    CHECK(tss_search(f, f, kInterior, cfg16(), ts) == MotionVector{});
    CHECK(fss_search(f, f, kInterior, cfg16(), fs) == MotionVector{});
    CHECK(ds_search(f, f, kInterior, cfg16(), ds) == MotionVector{});
    CHECK(ts.block_comparisons == 25);  // 1 + 8 + 8 + 8 at steps 4, 2, 1
    CHECK(fs.block_comparisons == 17);  // immediate-center path: 9 + 8
    CHECK(ds.block_comparisons == 13);  // one large diamond + small diamond
}

TEST_CASE("stepped searches recover constructed translations") {
    const Plane base = testutil::uniform_noise(64, 64, 104);
    SearchStats st;

    auto [cur44, ref44] = testutil::translated_pair(base, 4, 4);
    CHECK(tss_search(cur44, ref44, kInterior, cfg16(), st) == MotionVector::from_pels(4, 4));

    auto [cur20, ref20] = testutil::translated_pair(base, 2, 0);
    CHECK(fss_search(cur20, ref20, kInterior, cfg16(), st) == MotionVector::from_pels(2, 0));

    auto [cur11, ref11] = testutil::translated_pair(base, 1, 1);
    CHECK(ds_search(cur11, ref11, kInterior, cfg16(), st) == MotionVector::from_pels(1, 1));
}

TEST_CASE("stepped searches never beat the exhaustive minimum") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const Frame cur = make_frame(testutil::uniform_noise(64, 64, rng()));
        const Frame ref = make_frame(testutil::uniform_noise(64, 64, rng()));
        for (const BlockRect& rect : block_grid(64, 64, 16)) {
            const auto es = oracle::full_min(cur, ref, rect.x0, rect.y0, 16, 7);
            SearchStats st;
            for (auto search : {tss_search, fss_search, ds_search}) {
                const MotionVector v = search(cur, ref, rect, cfg16(), st);
                REQUIRE(v.is_fullpel());
                const auto got = oracle::sad_at(cur, ref, rect.x0, rect.y0, 16,
                                                int(v.dx_pels()), int(v.dy_pels()));
                CHECK(got >= es.sad);
            }
            CHECK(st.block_comparisons <= 3 * 225);
        }
    }
}

TEST_CASE("three-step search never exceeds its pattern budget") {
    std::mt19937_64 rng(405);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame cur = make_frame(testutil::uniform_noise(64, 64, rng()));
        const Frame ref = make_frame(testutil::uniform_noise(64, 64, rng()));
        for (const BlockRect& rect : block_grid(64, 64, 16)) {
            SearchStats st;
            tss_search(cur, ref, rect, cfg16(), st);
            CHECK(st.block_comparisons <= 25);
        }
    }
}

TEST_CASE("candidate gathering follows the raster neighborhood") {
    MotionField field(4, 3, 16);
    MotionField prev(4, 3, 16);
    // distinct sentinels at the positions the rules should read
    field.at(0, 1) = MotionVector::from_pels(1, 0);  // A of (1,1)
    field.at(1, 0) = MotionVector::from_pels(2, 0);  // B of (1,1)
    field.at(2, 0) = MotionVector::from_pels(3, 0);  // C of (1,1)
    prev.at(1, 1) = MotionVector::from_pels(4, 0);   // T of (1,1)
    // later raster positions carry junk that must never be read
    field.at(2, 1) = MotionVector::from_pels(-7, -7);
    field.at(1, 2) = MotionVector::from_pels(-7, -7);

    SUBCASE("interior block reads A, B, C and T") {
        const CandidateSet cs = gather_candidates(field, &prev, 1, 1);
        CHECK(cs.a == MotionVector::from_pels(1, 0));
        CHECK(cs.b == MotionVector::from_pels(2, 0));
        CHECK(cs.c == MotionVector::from_pels(3, 0));
        CHECK(cs.t == MotionVector::from_pels(4, 0));
    }
    SUBCASE("first block of the first pair has only zeros") {
        const CandidateSet cs = gather_candidates(field, nullptr, 0, 0);
        CHECK(cs.a == MotionVector{});
        CHECK(cs.b == MotionVector{});
        CHECK(cs.c == MotionVector{});
        CHECK(cs.t == MotionVector{});
    }
    SUBCASE("first block of a later pair still reads the temporal vector") {
        prev.at(0, 0) = MotionVector::from_pels(-1, 2);
        const CandidateSet cs = gather_candidates(field, &prev, 0, 0);
        CHECK(cs.a == MotionVector{});
        CHECK(cs.t == MotionVector::from_pels(-1, 2));
    }
    SUBCASE("right edge drops the upper-right candidate") {
        field.at(3, 0) = MotionVector::from_pels(5, 0);
        field.at(2, 1) = MotionVector::from_pels(6, 0);
        const CandidateSet cs = gather_candidates(field, &prev, 3, 1);
        CHECK(cs.a == MotionVector::from_pels(6, 0));
        CHECK(cs.b == MotionVector::from_pels(5, 0));
        CHECK(cs.c == MotionVector{});
    }
    SUBCASE("grid mismatch and bad coordinates are rejected") {
        MotionField small(2, 2, 16);
        CHECK_THROWS_AS(gather_candidates(field, &small, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(gather_candidates(field, nullptr, 4, 0), std::out_of_range);
        CHECK_THROWS_AS(gather_candidates(field, nullptr, 0, 3), std::out_of_range);
    }
}

TEST_CASE("candidate selection picks the smallest error") {
    const Plane base = testutil::uniform_noise(64, 64, 200);
    auto [cur, ref] = testutil::translated_pair(base, 2, 1);
    CandidateSet cs;
    cs.a = MotionVector::from_pels(-3, 0);
    cs.b = MotionVector::from_pels(2, 1);  // exact: zero SAD
    cs.c = MotionVector::from_pels(0, 0);
    cs.t = MotionVector::from_pels(5, 5);
    SearchStats st;
    const MotionVector v = brs_select(cur, ref, nullptr, nullptr, kInterior, BlockType::Opaque,
                                      cs, cfg16(), {}, st);
    CHECK(v == MotionVector::from_pels(2, 1));
    CHECK(st.block_comparisons == 4);
}

TEST_CASE("candidate selection breaks ties toward the earliest candidate") {
    const Frame flat = make_frame(Plane(64, 64, 50));
    CandidateSet cs;
    cs.a = MotionVector::from_pels(2, 0);
    cs.b = MotionVector::from_pels(0, 2);
    cs.c = MotionVector::from_pels(2, 2);
    cs.t = MotionVector::from_pels(4, 4);
    SearchStats st;
    // constant frames: every candidate scores zero
    const MotionVector v = brs_select(flat, flat, nullptr, nullptr, kInterior, BlockType::Opaque,
                                      cs, cfg16(), {}, st);
    CHECK(v == cs.a);
}

TEST_CASE("candidate selection clips inadmissible candidates before scoring") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 201));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 202));
    const BlockRect corner{0, 0, 16, 0, 0};
    CandidateSet cs;
    cs.a = MotionVector::from_pels(-7, -7);  // would leave the frame
    SearchStats st;
    const MotionVector v = brs_select(cur, ref, nullptr, nullptr, corner, BlockType::Opaque, cs,
                                      cfg16(), {}, st);
    CHECK(v.dx >= 0);
    CHECK(v.dy >= 0);
}

TEST_CASE("candidate selection rejects transparent blocks and missing masks") {
    const Frame f = make_frame(testutil::uniform_noise(64, 64, 203));
    SearchStats st;
    CHECK_THROWS_AS(brs_select(f, f, nullptr, nullptr, kInterior, BlockType::Transparent,
                               CandidateSet{}, cfg16(), {}, st),
                    std::invalid_argument);
    CHECK_THROWS_AS(brs_select(f, f, nullptr, nullptr, kInterior, BlockType::Boundary,
                               CandidateSet{}, cfg16(), {}, st),
                    std::invalid_argument);
}

TEST_CASE("boundary blocks score spatial candidates by shape") {
    // object square: rows 8..15, current columns 8..15, reference shifted
    // one pel to the right (columns 9..16)
    Plane cm(64, 64, 0);
    Plane rm(64, 64, 0);
    for (int y = 8; y < 16; ++y) {
        for (int x = 8; x < 16; ++x) {
            cm.at(x, y) = 255;
            rm.at(x + 1, y) = 255;
        }
    }
    const AlphaPlane cur_alpha = binarize(cm);
    const AlphaPlane ref_alpha = binarize(rm);
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 204));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 205));
    const BlockRect rect{0, 0, 16, 0, 0};
    REQUIRE(classify_block(cur_alpha, rect) == BlockType::Boundary);

    CandidateSet cs;
    cs.a = MotionVector::from_pels(1, 0);  // aligns the masks exactly

    SUBCASE("the aligned spatial candidate wins") {
        SearchStats st;
        std::vector<ScoreEvent> log;
        EstimateOptions opts;
        opts.scoring_log = &log;
        const MotionVector v = brs_select(cur, ref, &cur_alpha, &ref_alpha, rect,
                                          BlockType::Boundary, cs, cfg16(), opts, st);
        CHECK(v == MotionVector::from_pels(1, 0));
        REQUIRE(log.size() == 4);
        CHECK(log[0].kind == ScoreKind::Shape);
        CHECK(log[1].kind == ScoreKind::Shape);
        CHECK(log[2].kind == ScoreKind::Shape);
        CHECK(log[3].kind == ScoreKind::Texture);  // temporal candidate: texture
        CHECK(log[0].candidate == 0);
        CHECK(log[3].candidate == 3);
        CHECK(log[0].type == BlockType::Boundary);
    }
    SUBCASE("the temporal measure can be switched to shape") {
        SearchStats st;
        std::vector<ScoreEvent> log;
        EstimateOptions opts;
        opts.scoring_log = &log;
        opts.boundary_temporal = BoundaryTemporal::Shape;
        brs_select(cur, ref, &cur_alpha, &ref_alpha, rect, BlockType::Boundary, cs, cfg16(),
                   opts, st);
        REQUIRE(log.size() == 4);
        CHECK(log[3].kind == ScoreKind::Shape);
    }
}

TEST_CASE("per-pixel refinement update follows the gated gradient") {
    SUBCASE("flat region leaves the displacement unchanged") {
        const Frame cur = make_frame(Plane(32, 32, 90));
        const Frame ref = make_frame(Plane(32, 32, 130));  // nonzero difference
        const Vec2 d = prs_update(cur, ref, 8, 8, MotionVector::from_pels(1, -1), PrsConfig{});
        CHECK(d.x == 1.0);
        CHECK(d.y == -1.0);
    }
    SUBCASE("zero residual leaves the displacement unchanged") {
        const Frame f = make_frame(testutil::uniform_noise(32, 32, 300));
        const Vec2 d = prs_update(f, f, 8, 8, MotionVector{}, PrsConfig{});
        CHECK(d.x == 0.0);
        CHECK(d.y == 0.0);
    }
    SUBCASE("scaled inverse-gradient step") {
        Plane cp(32, 32, 110);
        cp.at(7, 8) = 100;
        cp.at(9, 8) = 120;  // horizontal gradient (120-100)/2 = 10
        Plane rp = cp;
        rp.at(8, 8) = static_cast<std::uint8_t>(cp.at(8, 8) - 5);  // dpd at zero = 5
        const Frame cur = make_frame(cp);
        const Frame ref = make_frame(rp);
        PrsConfig pc;
        pc.epsilon = 0.5;
        pc.theta = 2.0;
        const Vec2 d = prs_update(cur, ref, 8, 8, MotionVector{}, pc);
        CHECK(d.x == doctest::Approx(-0.25).epsilon(1e-12));
        CHECK(d.y == 0.0);  // vertical gradient is zero: gated off
    }
}

TEST_CASE("refinement terminates immediately on identical frames") {
    const Frame f = make_frame(testutil::uniform_noise(64, 64, 301));
    SearchStats st;
    std::vector<double> log;
    const MotionVector v =
        prs_refine(f, f, kInterior, MotionVector{}, cfg16(), PrsConfig{}, st, &log);
    CHECK(v == MotionVector{});
    CHECK(st.dpd_refinement_steps == 1);  // the center only: cost zero is minimal
    REQUIRE(log.size() == 1);
    CHECK(log[0] == 0.0);
}

TEST_CASE("refinement walks one pel toward a unit translation") {
    const Plane base = testutil::uniform_noise(64, 64, 302);
    auto [cur, ref] = testutil::translated_pair(base, 1, 0);
    SearchStats st;
    std::vector<double> log;
    const MotionVector v =
        prs_refine(cur, ref, kInterior, MotionVector{}, cfg16(), PrsConfig{}, st, &log);
    CHECK(v == MotionVector::from_pels(1, 0));
    REQUIRE(log.size() == 2);  // start, one recenter
    CHECK(log[1] == 0.0);
    CHECK(log[0] > 0.0);
}

TEST_CASE("refinement descends strictly and never worsens the start") {
    std::mt19937_64 rng(500);
    std::uniform_int_distribution<int> pick(-5, 5);
    const PrsConfig pc;
    for (int trial = 0; trial < 50; ++trial) {
        const Frame cur = make_frame(testutil::uniform_noise(64, 64, rng()));
        const Frame ref = make_frame(testutil::uniform_noise(64, 64, rng()));
        const MotionVector d0 = MotionVector::from_pels(pick(rng), pick(rng));
        SearchStats st;
        std::vector<double> log;
        const MotionVector v = prs_refine(cur, ref, kInterior, d0, cfg16(), pc, st, &log);
        REQUIRE(!log.empty());
        for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i] < log[i - 1]);
        CHECK(int(log.size()) - 1 <= pc.max_iterations);
        const double start = block_dpd_aggregate(cur, ref, kInterior,
                                                 MotionVector{-d0.dx, -d0.dy});
        const double end =
            block_dpd_aggregate(cur, ref, kInterior, MotionVector{-v.dx, -v.dy});
        CHECK(end <= start);
        CHECK(end == log.back());
        // result stays inside window and range
        CHECK(std::abs(v.dx) <= 14);
        CHECK(std::abs(v.dy) <= 14);
    }
}

TEST_CASE("refinement clips an out-of-window start") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 303));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 304));
    const BlockRect corner{0, 0, 16, 0, 0};
    SearchStats st;
    const MotionVector v = prs_refine(cur, ref, corner, MotionVector::from_pels(-7, -7),
                                      cfg16(), PrsConfig{}, st);
    CHECK(v.dx >= 0);
    CHECK(v.dy >= 0);
    CHECK(v.dx <= 14);
    CHECK(v.dy <= 14);
}

TEST_CASE("half-pel refinement can land between pixels") {
    // reference is a plane with distinct x and y slopes; current equals its
    // horizontal half-pel interpolation, so the unique zero-error
    // displacement is (0.5, 0)
    Plane rp(32, 32);
    Plane cp(32, 32);
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            rp.at(x, y) = static_cast<std::uint8_t>(2 * x + 6 * y);
            cp.at(x, y) = static_cast<std::uint8_t>(2 * x + 6 * y + 1);
        }
    }
    const Frame cur = make_frame(cp);
    const Frame ref = make_frame(rp);
    const BlockRect rect{8, 8, 16, 0, 0};
    PrsConfig pc;
    pc.step = 1;
    SearchStats st;
    const MotionVector v = prs_refine(cur, ref, rect, MotionVector{}, cfg16(), pc, st);
    CHECK(v == MotionVector{1, 0});
}

TEST_CASE("field estimation emits the expected grids") {
    const Frame a = make_frame(testutil::uniform_noise(176, 144, 600));
    SearchConfig c16 = cfg16();
    auto [f16, st16] = estimate_field(Algo::ES, a, a, nullptr, nullptr, nullptr, c16, PrsConfig{});
    CHECK(f16.cols == 11);
    CHECK(f16.rows == 9);

    SearchConfig c8 = cfg16();
    c8.block_size = 8;
    auto [f8, st8] = estimate_field(Algo::PA, a, a, nullptr, nullptr, nullptr, c8, PrsConfig{});
    CHECK(f8.cols == 22);
    CHECK(f8.rows == 18);
}

TEST_CASE("identical frames give the all-zero field for every algorithm") {
    const Frame a = make_frame(testutil::uniform_noise(64, 64, 601));
    for (Algo algo : {Algo::ES, Algo::TSS, Algo::FSS, Algo::DS, Algo::PA}) {
        SearchConfig c = cfg16();
        if (algo == Algo::PA) c.block_size = 8;
        auto [field, st] = estimate_field(algo, a, a, nullptr, nullptr, nullptr, c, PrsConfig{});
        for (const MotionVector& v : field.vectors) CHECK(v == MotionVector{});
        CHECK(st.blocks_opaque == field.cols * field.rows);
    }
}

TEST_CASE("transparent blocks carry zero vectors and cost nothing") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 602));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 603));
    const AlphaPlane none = binarize(Plane(64, 64, 0));

    for (Algo algo : {Algo::ES, Algo::TSS, Algo::FSS, Algo::DS, Algo::PA}) {
        auto [field, st] = estimate_field(algo, cur, ref, &none, &none, nullptr, cfg16(),
                                          PrsConfig{});
        CHECK(st.block_comparisons == 0);
        CHECK(st.dpd_refinement_steps == 0);
        CHECK(st.blocks_transparent == 16);
        CHECK(st.blocks_estimated() == 0);
        for (const MotionVector& v : field.vectors) CHECK(v == MotionVector{});
        for (BlockType t : field.types) CHECK(t == BlockType::Transparent);
    }
}

TEST_CASE("selection comparisons are four per estimated block") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 604));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 605));
    SearchConfig c = cfg16();
    c.block_size = 8;
    auto [field, st] = estimate_field(Algo::PA, cur, ref, nullptr, nullptr, nullptr, c,
                                      PrsConfig{});
    CHECK(st.block_comparisons == 4 * 64);  // 8x8 grid of 8-pel blocks
    CHECK(st.dpd_refinement_steps >= 64);   // at least the center of every block
}

TEST_CASE("field estimation is deterministic") {
    const Frame cur = make_frame(testutil::uniform_noise(64, 64, 606));
    const Frame ref = make_frame(testutil::uniform_noise(64, 64, 607));
    Plane m(64, 64, 0);
    for (int y = 10; y < 40; ++y)
        for (int x = 12; x < 44; ++x) m.at(x, y) = 255;
    const AlphaPlane alpha = binarize(m);
    SearchConfig c = cfg16();
    c.block_size = 8;

    auto [f1, s1] = estimate_field(Algo::PA, cur, ref, &alpha, &alpha, nullptr, c, PrsConfig{});
    auto [f2, s2] = estimate_field(Algo::PA, cur, ref, &alpha, &alpha, nullptr, c, PrsConfig{});
    CHECK(f1 == f2);
    CHECK(s1.block_comparisons == s2.block_comparisons);
    CHECK(s1.dpd_refinement_steps == s2.dpd_refinement_steps);
}

TEST_CASE("field estimation validates dimensions and history grids") {
    const Frame a = make_frame(testutil::uniform_noise(64, 64, 608));
    const Frame b = make_frame(testutil::uniform_noise(32, 32, 609));
    CHECK_THROWS_AS(
        estimate_field(Algo::ES, a, b, nullptr, nullptr, nullptr, cfg16(), PrsConfig{}),
        std::invalid_argument);

    MotionField wrong(3, 3, 16);
    CHECK_THROWS_AS(
        estimate_field(Algo::PA, a, a, nullptr, nullptr, &wrong, cfg16(), PrsConfig{}),
        std::invalid_argument);
}

TEST_CASE("temporal candidates thread through consecutive pairs") {
    // at block (0,0) the spatial candidates are all zero, so only a previous
    // field can supply the true displacement; seed it and check adoption
    const Plane base = testutil::uniform_noise(64, 64, 610);
    auto [cur, ref] = testutil::translated_pair(base, 2, 2);
    SearchConfig c = cfg16();
    c.block_size = 8;
    MotionField prev(8, 8, 8);
    for (MotionVector& v : prev.vectors) v = MotionVector::from_pels(2, 2);

    auto [field, st] = estimate_field(Algo::PA, cur, ref, nullptr, nullptr, &prev, c,
                                      PrsConfig{});
    CHECK(field.at(0, 0) == MotionVector::from_pels(2, 2));

    // ties keep the earliest candidate: on constant frames every candidate
    // scores zero and the seeded temporal vector must not override it
    const Frame flat = make_frame(Plane(64, 64, 99));
    auto [tie_field, tie_st] = estimate_field(Algo::PA, flat, flat, nullptr, nullptr, &prev, c,
                                              PrsConfig{});
    CHECK(tie_field.at(0, 0) == MotionVector{});
}
