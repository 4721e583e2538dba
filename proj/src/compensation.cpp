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

#include "me/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace me {

ResidualPlane::ResidualPlane(int w, int h)
    : width(w), height(h), samples(std::size_t(w) * std::size_t(h)) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("residual plane dimensions must be positive");
}

Frame predict_frame(const Frame& ref, const MotionField& field, const SearchConfig& cfg) {
    cfg.validate();
    if (field.block_size != cfg.block_size) {
        throw std::invalid_argument("motion field block size does not match the configuration");
    }
    if (field.cols * field.block_size != ref.luma.width ||
        field.rows * field.block_size != ref.luma.height) {
        throw std::invalid_argument("motion field grid does not cover the frame");
    }
    Frame pred = ref;
    pred.index = field.cur_index;
    const int bs = field.block_size;
    for (int v = 0; v < field.rows; ++v) {
        for (int h = 0; h < field.cols; ++h) {
            MotionVector mv = field.at(h, v);
            if (field.type_at(h, v) == BlockType::Transparent) mv = MotionVector{};
            const int x0 = h * bs;
            const int y0 = v * bs;
            if (mv.is_fullpel()) {
                const int dx = mv.dx / 2;
                const int dy = mv.dy / 2;
                for (int y = y0; y < y0 + bs; ++y) {
                    for (int x = x0; x < x0 + bs; ++x) {
                        pred.luma.at(x, y) =
                            static_cast<std::uint8_t>(sample_clamped(ref, x + dx, y + dy));
                    }
                }
            } else {
                for (int y = y0; y < y0 + bs; ++y) {
                    for (int x = x0; x < x0 + bs; ++x) {
                        const double s = sample_halfpel(ref, 2 * x + mv.dx, 2 * y + mv.dy);
                        // nearbyint under the default rounding mode: ties to even
                        const double r = std::nearbyint(s);
                        pred.luma.at(x, y) =
                            static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
                    }
                }
            }
        }
    }
    return pred;
}

ResidualPlane residual(const Frame& cur, const Frame& pred) {
    if (cur.luma.width != pred.luma.width || cur.luma.height != pred.luma.height) {
        throw std::invalid_argument("residual operands have different dimensions");
    }
    ResidualPlane r(cur.luma.width, cur.luma.height);
    for (int y = 0; y < r.height; ++y) {
        for (int x = 0; x < r.width; ++x) {
            r.at(x, y) = static_cast<std::int16_t>(int(cur.luma.at(x, y)) - int(pred.luma.at(x, y)));
        }
    }
    return r;
}

Plane residual_to_gray(const ResidualPlane& r) {
    Plane gray(r.width, r.height);
    for (int y = 0; y < r.height; ++y) {
        for (int x = 0; x < r.width; ++x) {
            gray.at(x, y) = static_cast<std::uint8_t>(std::clamp(int(r.at(x, y)) + 128, 0, 255));
        }
    }
    return gray;
}

}  // namespace me
