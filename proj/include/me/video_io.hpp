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

#ifndef ME_VIDEO_IO_HPP
#define ME_VIDEO_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "me/frame.hpp"

namespace me {

enum class SequenceFormat { I420Raw, Y4M };

/// An openable raw-I420 or Y4M sequence. Reads are positional, so one source
/// may be shared across threads.
struct SequenceSource {
    std::string path;
    SequenceFormat format = SequenceFormat::I420Raw;
    int width = 0;
    int height = 0;
    int frame_count = 0;
    // Y4M layout, fixed at open time.
    std::size_t header_bytes = 0;       // bytes before the first FRAME marker
    std::size_t frame_marker_bytes = 0; // length of each "FRAME...\n" line

    std::size_t frame_bytes() const {
        return static_cast<std::size_t>(width) * height * 3 / 2;
    }
};

/// Per-frame binary masks named by a printf-style pattern (e.g. mask%04d.pgm).
/// An empty pattern means no masks: every block classifies as opaque.
struct MaskSource {
    std::string pattern;
    int threshold = 128;

    bool present() const { return !pattern.empty(); }
    std::string path_for(int index) const;
};

/// Parses a Y4M signature line ("YUV4MPEG2 W.. H.. ... C420\n"). Only 4:2:0
/// chroma is accepted; width/height must be multiples of 16. frame_count is
/// left at 0 (derived from the file size by open_y4m).
SequenceSource parse_y4m_header(const std::string& header_line);

/// Opens a headerless I420 file; frame count derived from the file size,
/// which must be an exact multiple of width*height*3/2.
SequenceSource open_i420(const std::string& path, int width, int height);

/// Opens a Y4M file: parses the header, records the frame-marker layout and
/// derives the frame count. All frame markers must have equal length.
SequenceSource open_y4m(const std::string& path);

/// Reads one frame (luma + chroma). Pure with respect to (src, index).
Frame read_frame(const SequenceSource& src, int index);

/// Reads and binarizes the mask for one frame; dimensions must match.
AlphaPlane read_mask(const MaskSource& src, int index, int video_width, int video_height);

/// Reads a binary P5 PGM (maxval <= 255) into a gray plane.
Plane read_pgm(const std::string& path);

/// Writes a gray plane as binary P5 PGM: "P5\n<w> <h>\n255\n" + samples.
void write_gray_pgm(const Plane& plane, const std::string& path);

/// Appends one I420 frame to an open stream-like target (used by the
/// synthetic generators). Empty chroma planes are written as 128.
void append_i420_frame(std::ostream& out, const Frame& frame);

}  // namespace me

#endif  // ME_VIDEO_IO_HPP
