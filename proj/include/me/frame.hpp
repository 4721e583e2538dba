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

#ifndef ME_FRAME_HPP
#define ME_FRAME_HPP

#include <cstdint>
#include <vector>

namespace me {

/// A width x height plane of 8-bit samples, row-major.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Plane() = default;
    Plane(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    const std::uint8_t* row(int y) const {
        return data.data() + static_cast<std::size_t>(y) * width;
    }
    bool empty() const { return data.empty(); }

    bool operator==(const Plane&) const = default;
};

/// One video frame. The luma plane drives all estimation; chroma planes are
/// carried along for I420 round trips and may be empty.
struct Frame {
    Plane luma;
    Plane cb;
    Plane cr;
    int index = 0;

    int width() const { return luma.width; }
    int height() const { return luma.height; }
};

/// Per-pixel binary object mask; every sample is exactly 0 or 255.
struct AlphaPlane {
    Plane mask;

    int width() const { return mask.width; }
    int height() const { return mask.height; }
    bool member(int x, int y) const { return mask.at(x, y) != 0; }
};

/// Block classification derived from the alpha samples under the block.
enum class BlockType : std::uint8_t { Transparent, Opaque, Boundary };

const char* to_string(BlockType t);

/// Axis-aligned block position on the estimation grid.
struct BlockRect {
    int x0 = 0;
    int y0 = 0;
    int size = 16;
    int grid_h = 0;  // block column
    int grid_v = 0;  // block row
};

/// Displacement in half-pel units. Integer-pel vectors have even components.
struct MotionVector {
    int dx = 0;
    int dy = 0;

    bool operator==(const MotionVector&) const = default;
    bool is_fullpel() const { return (dx % 2) == 0 && (dy % 2) == 0; }
    double dx_pels() const { return dx / 2.0; }
    double dy_pels() const { return dy / 2.0; }

    static MotionVector from_pels(int px, int py) { return {2 * px, 2 * py}; }
};

/// Validates the 16-pixel macro-block alignment shared by Frame and the
/// sequence readers. Throws std::invalid_argument on violation.
void check_dimensions(int width, int height);

/// Builds a frame around an existing luma plane (dimensions validated).
Frame make_frame(Plane luma, int index = 0);

/// Builds an alpha plane from a gray plane: sample >= threshold -> 255 else 0.
AlphaPlane binarize(const Plane& gray, int threshold = 128);

/// f(clamp(x), clamp(y)) -- edge replication for displaced reads.
std::uint8_t sample_clamped(const Frame& frame, int x, int y);

/// Bilinear sample on the half-pel grid (coordinates in half-pel units).
/// At even coordinates this equals sample_clamped exactly.
double sample_halfpel(const Frame& frame, int x2, int y2);

/// Transparent iff all alpha samples under the rect are 0, Opaque iff all are
/// 255, otherwise Boundary. A null alpha means no mask: always Opaque.
BlockType classify_block(const AlphaPlane* alpha, const BlockRect& rect);
BlockType classify_block(const AlphaPlane& alpha, const BlockRect& rect);

/// Raster-order grid of size x size blocks covering the frame; `size` must
/// divide both dimensions.
std::vector<BlockRect> block_grid(int width, int height, int size);
std::vector<BlockRect> block_grid(const Frame& frame, int size);

}  // namespace me

#endif  // ME_FRAME_HPP
