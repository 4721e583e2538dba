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

#include "me/video_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace me {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::uintmax_t file_size_or_fail(const std::string& path) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) fail("cannot stat " + path + ": " + ec.message());
    return size;
}

void read_at(const std::string& path, std::size_t offset, std::uint8_t* dst, std::size_t len,
             const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    in.seekg(static_cast<std::streamoff>(offset));
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
        fail(std::string("short read (") + what + ") in " + path);
}

// Skips PGM whitespace and '#' comment lines.
void skip_pgm_space(std::istream& in) {
    int c = in.peek();
    while (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') {
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            in.get();
        }
        c = in.peek();
    }
}

int read_pgm_int(std::istream& in, const std::string& path) {
    skip_pgm_space(in);
    int value = -1;
    if (!(in >> value) || value < 0) fail("malformed PGM header in " + path);
    return value;
}

}  // namespace

std::string MaskSource::path_for(int index) const {
    char buf[1024];
    const int n = std::snprintf(buf, sizeof(buf), pattern.c_str(), index);
    if (n < 0 || n >= static_cast<int>(sizeof(buf)))
        throw std::runtime_error("bad mask pattern: " + pattern);
    return std::string(buf, static_cast<std::size_t>(n));
}

SequenceSource parse_y4m_header(const std::string& header_line) {
    std::istringstream line(header_line);
    std::string magic;
    line >> magic;
    if (magic != "YUV4MPEG2") fail("not a Y4M stream (missing YUV4MPEG2 signature)");

    SequenceSource src;
    src.format = SequenceFormat::Y4M;
    bool have_w = false, have_h = false;
    std::string tag;
    while (line >> tag) {
        switch (tag[0]) {
            case 'W':
                src.width = std::stoi(tag.substr(1));
                have_w = true;
                break;
            case 'H':
                src.height = std::stoi(tag.substr(1));
                have_h = true;
                break;
            case 'C':
                if (tag.rfind("C420", 0) != 0)
                    fail("unsupported Y4M colorspace " + tag + " (only 4:2:0 accepted)");
                break;
            default:
                break;  // frame rate, interlacing and aspect tags are ignored
        }
    }
    if (!have_w || !have_h) fail("Y4M header missing W or H tag");
    check_dimensions(src.width, src.height);
    return src;
}

SequenceSource open_i420(const std::string& path, int width, int height) {
    check_dimensions(width, height);
    SequenceSource src;
    src.path = path;
    src.format = SequenceFormat::I420Raw;
    src.width = width;
    src.height = height;
    const auto size = file_size_or_fail(path);
    if (size % src.frame_bytes() != 0)
        fail(path + ": size is not a multiple of the I420 frame size");
    src.frame_count = static_cast<int>(size / src.frame_bytes());
    return src;
}

SequenceSource open_y4m(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) fail("cannot read Y4M header from " + path);

    SequenceSource src = parse_y4m_header(header);
    src.path = path;
    src.header_bytes = header.size() + 1;

    std::string marker;
    if (!std::getline(in, marker)) fail(path + ": Y4M stream has no frames");
    if (marker.rfind("FRAME", 0) != 0) fail(path + ": expected FRAME marker");
    src.frame_marker_bytes = marker.size() + 1;

    const auto size = file_size_or_fail(path);
    const std::size_t stride = src.frame_marker_bytes + src.frame_bytes();
    const std::size_t payload = size - src.header_bytes;
    if (payload % stride != 0) fail(path + ": truncated or irregular Y4M stream");
    src.frame_count = static_cast<int>(payload / stride);
    return src;
}

Frame read_frame(const SequenceSource& src, int index) {
    if (index < 0 || index >= src.frame_count)
        throw std::out_of_range("frame index " + std::to_string(index) + " out of range [0," +
                                std::to_string(src.frame_count) + ")");

    std::size_t offset;
    if (src.format == SequenceFormat::I420Raw) {
        offset = static_cast<std::size_t>(index) * src.frame_bytes();
    } else {
        const std::size_t stride = src.frame_marker_bytes + src.frame_bytes();
        offset = src.header_bytes + static_cast<std::size_t>(index) * stride;
        std::vector<std::uint8_t> marker(src.frame_marker_bytes);
        read_at(src.path, offset, marker.data(), marker.size(), "frame marker");
        if (marker.size() < 6 || std::string(marker.begin(), marker.begin() + 5) != "FRAME" ||
            marker.back() != '\n')
            fail(src.path + ": irregular FRAME marker at index " + std::to_string(index));
        offset += src.frame_marker_bytes;
    }

    Frame f;
    f.index = index;
    f.luma = Plane(src.width, src.height);
    f.cb = Plane(src.width / 2, src.height / 2);
    f.cr = Plane(src.width / 2, src.height / 2);

    std::vector<std::uint8_t> buf(src.frame_bytes());
    read_at(src.path, offset, buf.data(), buf.size(), "frame payload");
    const std::size_t ysize = f.luma.data.size();
    const std::size_t csize = f.cb.data.size();
    std::copy(buf.begin(), buf.begin() + ysize, f.luma.data.begin());
    std::copy(buf.begin() + ysize, buf.begin() + ysize + csize, f.cb.data.begin());
    std::copy(buf.begin() + ysize + csize, buf.end(), f.cr.data.begin());
    return f;
}

AlphaPlane read_mask(const MaskSource& src, int index, int video_width, int video_height) {
    if (!src.present()) fail("read_mask called without a mask pattern");
    const Plane gray = read_pgm(src.path_for(index));
    if (gray.width != video_width || gray.height != video_height)
        fail("mask " + src.path_for(index) + " is " + std::to_string(gray.width) + "x" +
             std::to_string(gray.height) + ", video is " + std::to_string(video_width) + "x" +
             std::to_string(video_height));
    return binarize(gray, src.threshold);
}

Plane read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    char p = 0, five = 0;
    in.get(p);
    in.get(five);
    if (p != 'P' || five != '5') fail(path + ": not a binary P5 PGM");
    const int width = read_pgm_int(in, path);
    const int height = read_pgm_int(in, path);
    const int maxval = read_pgm_int(in, path);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
        fail(path + ": unsupported PGM geometry or maxval");
    in.get();  // single whitespace byte after maxval

    Plane plane(width, height);
    in.read(reinterpret_cast<char*>(plane.data.data()),
            static_cast<std::streamsize>(plane.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != plane.data.size())
        fail(path + ": truncated PGM payload");
    return plane;
}

void write_gray_pgm(const Plane& plane, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot create " + path);
    out << "P5\n" << plane.width << " " << plane.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(plane.data.data()),
              static_cast<std::streamsize>(plane.data.size()));
    if (!out) fail("write failed: " + path);
}

void append_i420_frame(std::ostream& out, const Frame& frame) {
    const auto write_plane = [&out](const Plane& p) {
        out.write(reinterpret_cast<const char*>(p.data.data()),
                  static_cast<std::streamsize>(p.data.size()));
    };
    write_plane(frame.luma);
    const std::size_t csize = static_cast<std::size_t>(frame.width() / 2) * (frame.height() / 2);
    if (frame.cb.empty()) {
        const std::vector<char> gray(csize, static_cast<char>(128));
        out.write(gray.data(), static_cast<std::streamsize>(gray.size()));
        out.write(gray.data(), static_cast<std::streamsize>(gray.size()));
    } else {
        write_plane(frame.cb);
        write_plane(frame.cr);
    }
    if (!out) fail("I420 frame write failed");
}

}  // namespace me
