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

#include "me/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace me {

const char* to_string(BlockType t) {
    switch (t) {
        case BlockType::Transparent: return "transparent";
        case BlockType::Opaque: return "opaque";
        case BlockType::Boundary: return "boundary";
    }
    return "?";
}

void check_dimensions(int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("frame dimensions must be positive");
    if (width % 16 != 0 || height % 16 != 0)
        throw std::invalid_argument("frame dimensions must be multiples of 16, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
}

Frame make_frame(Plane luma, int index) {
    check_dimensions(luma.width, luma.height);
    Frame f;
    f.luma = std::move(luma);
    f.index = index;
    return f;
}

AlphaPlane binarize(const Plane& gray, int threshold) {
    AlphaPlane a;
    a.mask = Plane(gray.width, gray.height);
    for (std::size_t i = 0; i < gray.data.size(); ++i)
        a.mask.data[i] = gray.data[i] >= threshold ? 255 : 0;
    return a;
}

std::uint8_t sample_clamped(const Frame& frame, int x, int y) {
    x = std::clamp(x, 0, frame.width() - 1);
    y = std::clamp(y, 0, frame.height() - 1);
    return frame.luma.at(x, y);
}

double sample_halfpel(const Frame& frame, int x2, int y2) {
    // Arithmetic shift gives floor division for negative coordinates.
    const int xi = x2 >> 1;
    const int yi = y2 >> 1;
    const int fx = x2 & 1;
    const int fy = y2 & 1;
    const double p00 = sample_clamped(frame, xi, yi);
    if (fx == 0 && fy == 0) return p00;
    const double p10 = sample_clamped(frame, xi + 1, yi);
    const double p01 = sample_clamped(frame, xi, yi + 1);
    const double p11 = sample_clamped(frame, xi + 1, yi + 1);
    const double wx = fx * 0.5;
    const double wy = fy * 0.5;
    return (1.0 - wx) * (1.0 - wy) * p00 + wx * (1.0 - wy) * p10 +
           (1.0 - wx) * wy * p01 + wx * wy * p11;
}

BlockType classify_block(const AlphaPlane* alpha, const BlockRect& rect) {
    if (alpha == nullptr) return BlockType::Opaque;
    return classify_block(*alpha, rect);
}

BlockType classify_block(const AlphaPlane& alpha, const BlockRect& rect) {
    if (rect.x0 < 0 || rect.y0 < 0 || rect.x0 + rect.size > alpha.width() ||
        rect.y0 + rect.size > alpha.height())
        throw std::out_of_range("block rect outside alpha plane");
    bool any_set = false;
    bool all_set = true;
    for (int y = rect.y0; y < rect.y0 + rect.size; ++y) {
        const std::uint8_t* row = alpha.mask.row(y);
        for (int x = rect.x0; x < rect.x0 + rect.size; ++x) {
            if (row[x] != 0)
                any_set = true;
            else
                all_set = false;
        }
    }
    if (!any_set) return BlockType::Transparent;
    if (all_set) return BlockType::Opaque;
    return BlockType::Boundary;
}

std::vector<BlockRect> block_grid(int width, int height, int size) {
    if (size <= 0 || width % size != 0 || height % size != 0)
        throw std::invalid_argument("block size " + std::to_string(size) +
                                    " does not divide " + std::to_string(width) + "x" +
                                    std::to_string(height));
    const int cols = width / size;
    const int rows = height / size;
    std::vector<BlockRect> grid;
    grid.reserve(static_cast<std::size_t>(cols) * rows);
    for (int v = 0; v < rows; ++v)
        for (int h = 0; h < cols; ++h)
            grid.push_back(BlockRect{h * size, v * size, size, h, v});
    return grid;
}

std::vector<BlockRect> block_grid(const Frame& frame, int size) {
    return block_grid(frame.width(), frame.height(), size);
}

}  // namespace me
