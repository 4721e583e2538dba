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

#ifndef ME_COMPENSATION_HPP
#define ME_COMPENSATION_HPP

#include <cstdint>
#include <vector>

#include "me/estimators.hpp"
#include "me/frame.hpp"

namespace me {

/// Signed per-pixel differences (current - prediction); values in [-255, 255].
struct ResidualPlane {
    int width = 0;
    int height = 0;
    std::vector<std::int16_t> samples;

    ResidualPlane() = default;
    ResidualPlane(int w, int h);

    std::int16_t& at(int x, int y) { return samples[std::size_t(y) * width + x]; }
    std::int16_t at(int x, int y) const { return samples[std::size_t(y) * width + x]; }
};

/// Motion-compensated prediction: every block of the output luma is the
/// reference displaced by the block's vector; half-pel vectors use bilinear
/// samples rounded to the nearest gray level with ties to even. Transparent
/// blocks are copied with zero displacement. Chroma is carried over from the
/// reference unchanged.
Frame predict_frame(const Frame& ref, const MotionField& field, const SearchConfig& cfg);

/// Per-pixel cur - pred over the luma plane.
ResidualPlane residual(const Frame& cur, const Frame& pred);

/// Visualization mapping: clamp(value + 128, 0, 255).
Plane residual_to_gray(const ResidualPlane& r);

}  // namespace me

#endif  // ME_COMPENSATION_HPP
