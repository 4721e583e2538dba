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

#include "me/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace me {

namespace {

constexpr double kPeakSquared = 255.0 * 255.0;

// Integer-pel SAD with the displaced rect fully inside the frame.
std::int64_t sad_fullpel_inside(const Plane& cur, const Plane& ref, const BlockRect& rect,
                                int dx, int dy) {
    std::int64_t sum = 0;
    for (int y = 0; y < rect.size; ++y) {
        const std::uint8_t* crow = cur.row(rect.y0 + y) + rect.x0;
        const std::uint8_t* rrow = ref.row(rect.y0 + y + dy) + rect.x0 + dx;
        for (int x = 0; x < rect.size; ++x) sum += std::abs(int(crow[x]) - int(rrow[x]));
    }
    return sum;
}

}  // namespace

double sad_texture(const Frame& cur, const Frame& ref, const BlockRect& rect, MotionVector mv) {
    if (mv.is_fullpel()) {
        const int dx = mv.dx / 2;
        const int dy = mv.dy / 2;
        if (rect.x0 + dx >= 0 && rect.y0 + dy >= 0 && rect.x0 + dx + rect.size <= ref.width() &&
            rect.y0 + dy + rect.size <= ref.height()) {
            return double(sad_fullpel_inside(cur.luma, ref.luma, rect, dx, dy));
        }
        std::int64_t sum = 0;
        for (int y = rect.y0; y < rect.y0 + rect.size; ++y)
            for (int x = rect.x0; x < rect.x0 + rect.size; ++x)
                sum += std::abs(int(cur.luma.at(x, y)) - int(sample_clamped(ref, x + dx, y + dy)));
        return double(sum);
    }
    double sum = 0.0;
    for (int y = rect.y0; y < rect.y0 + rect.size; ++y)
        for (int x = rect.x0; x < rect.x0 + rect.size; ++x)
            sum += std::abs(double(cur.luma.at(x, y)) -
                            sample_halfpel(ref, 2 * x + mv.dx, 2 * y + mv.dy));
    return sum;
}

std::int64_t sad_shape(const AlphaPlane& cur_alpha, const AlphaPlane& ref_alpha,
                       const BlockRect& rect, MotionVector mv) {
    if (!mv.is_fullpel())
        throw std::invalid_argument("shape SAD requires an integer-pel vector");
    const int dx = mv.dx / 2;
    const int dy = mv.dy / 2;
    const int w = ref_alpha.width();
    const int h = ref_alpha.height();
    std::int64_t mismatches = 0;
    for (int y = rect.y0; y < rect.y0 + rect.size; ++y) {
        const int ry = std::clamp(y + dy, 0, h - 1);
        const std::uint8_t* crow = cur_alpha.mask.row(y);
        const std::uint8_t* rrow = ref_alpha.mask.row(ry);
        for (int x = rect.x0; x < rect.x0 + rect.size; ++x) {
            const int rx = std::clamp(x + dx, 0, w - 1);
            if (crow[x] != rrow[rx]) ++mismatches;
        }
    }
    return 255 * mismatches;
}

double dpd(const Frame& cur, const Frame& ref, int x, int y, MotionVector d) {
    return double(cur.luma.at(x, y)) - sample_halfpel(ref, 2 * x - d.dx, 2 * y - d.dy);
}

double block_dpd_aggregate(const Frame& cur, const Frame& ref, const BlockRect& rect,
                           MotionVector d) {
    // Same displaced reads as sad_texture at the mirrored vector; reuse its
    // integer fast path.
    return sad_texture(cur, ref, rect, MotionVector{-d.dx, -d.dy});
}

double grad_central(const Frame& frame, int x, int y, GradientAxis axis) {
    if (axis == GradientAxis::Horizontal)
        return (double(sample_clamped(frame, x + 1, y)) - double(sample_clamped(frame, x - 1, y))) / 2.0;
    return (double(sample_clamped(frame, x, y + 1)) - double(sample_clamped(frame, x, y - 1))) / 2.0;
}

double update_term(double gradient, double theta) {
    if (std::abs(gradient) < theta) return 0.0;
    return 1.0 / gradient;
}

PsnrResult psnr(const Frame& cur, const Frame& recon) {
    if (cur.width() != recon.width() || cur.height() != recon.height())
        throw std::invalid_argument("psnr: frame dimensions differ");
    std::int64_t sq = 0;
    const std::size_t n = cur.luma.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int d = int(cur.luma.data[i]) - int(recon.luma.data[i]);
        sq += std::int64_t(d) * d;
    }
    PsnrResult r;
    r.mse = double(sq) / double(n);
    if (sq != 0) {
        r.psnr_linear = kPeakSquared / r.mse;
        r.psnr_db = 10.0 * std::log10(*r.psnr_linear);
    }
    return r;
}

double figure_of_merit(double psnr_linear, int s, double c) {
    if (s < 1) throw std::invalid_argument("figure_of_merit: search range must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("figure_of_merit: average compared blocks must be > 0");
    const double window = double(2 * s + 1) * double(2 * s + 1);
    return psnr_linear * window / c;
}

}  // namespace me
