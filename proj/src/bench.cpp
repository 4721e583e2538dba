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

#include "me/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace me {

namespace {

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string artifact_name(const char* stem, int index, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04d.%s", stem, index, ext);
    return buf;
}

}  // namespace

const char* const kCsvHeader =
    "frame,algo,psnr_db,mse,avg_search_points,dpd_steps,"
    "n_opaque,n_boundary,n_transparent,elapsed_us";

void ExperimentConfig::validate() const {
    if (algos.empty()) throw std::invalid_argument("no algorithm selected");
    search.validate();
    prs.validate();
    if (source.frame_count <= 0) throw std::invalid_argument("sequence has no frames");
    if (search.ref_distance >= frames_used()) {
        throw std::invalid_argument("ref_distance must be smaller than the frame count");
    }
}

int ExperimentConfig::frames_used() const {
    if (frame_limit > 0) return std::min(frame_limit, source.frame_count);
    return source.frame_count;
}

std::string csv_row(const FrameReport& r) {
    std::ostringstream os;
    os << r.frame << ',' << to_string(r.algo) << ',';
    os << (r.psnr.psnr_db ? fmt_double(*r.psnr.psnr_db) : std::string("inf")) << ',';
    os << fmt_double(r.psnr.mse) << ',';
    os << (r.avg_search_points ? fmt_double(*r.avg_search_points) : std::string("nan")) << ',';
    os << r.dpd_steps << ',' << r.n_opaque << ',' << r.n_boundary << ','
       << r.n_transparent << ',' << r.elapsed_us;
    return os.str();
}

void dump_artifacts(const Frame& cur, const Frame& pred, const ResidualPlane& resid,
                    const MotionField& field, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_gray_pgm(pred.luma, dir + "/" + artifact_name("pred", cur.index, "pgm"));
    write_gray_pgm(residual_to_gray(resid), dir + "/" + artifact_name("resid", cur.index, "pgm"));

    const std::string vpath = dir + "/" + artifact_name("vectors", cur.index, "txt");
    std::ofstream out(vpath);
    if (!out) throw std::runtime_error("cannot write " + vpath);
    for (int v = 0; v < field.rows; ++v) {
        for (int h = 0; h < field.cols; ++h) {
            const MotionVector mv = field.at(h, v);
            out << h << ' ' << v << ' ' << mv.dx << ' ' << mv.dy << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + vpath);
}

MotionField read_vectors_file(const std::string& path, int block_size) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    struct Entry {
        int h, v, dx, dy;
    };
    std::vector<Entry> entries;
    int cols = 0, rows = 0;
    int h, v, dx, dy;
    while (in >> h >> v >> dx >> dy) {
        if (h < 0 || v < 0) throw std::runtime_error("negative block coordinates in " + path);
        entries.push_back({h, v, dx, dy});
        cols = std::max(cols, h + 1);
        rows = std::max(rows, v + 1);
    }
    if (!in.eof()) throw std::runtime_error("malformed vector line in " + path);
    if (entries.empty()) throw std::runtime_error("empty vector file " + path);
    if (entries.size() != std::size_t(cols) * rows) {
        throw std::runtime_error("vector file does not cover the block grid: " + path);
    }
    MotionField field(cols, rows, block_size);
    for (const Entry& e : entries) field.at(e.h, e.v) = MotionVector{e.dx, e.dy};
    return field;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n = cfg.frames_used();

    std::vector<Frame> frames;
    frames.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) frames.push_back(read_frame(cfg.source, i));
    std::vector<AlphaPlane> masks;
    if (cfg.masks.present()) {
        masks.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            masks.push_back(read_mask(cfg.masks, i, cfg.source.width, cfg.source.height));
        }
    }

    std::ofstream csv;
    if (!cfg.csv_path.empty()) {
        csv.open(cfg.csv_path);
        if (!csv) throw std::runtime_error("cannot write " + cfg.csv_path);
        csv << kCsvHeader << '\n';
    }

    ExperimentResult result;
    for (Algo algo : cfg.algos) {
        SearchConfig scfg = cfg.search;
        if (cfg.block_size_auto) scfg.block_size = (algo == Algo::PA) ? 8 : 16;
        EstimateOptions opts;
        opts.boundary_temporal = cfg.boundary_temporal;

        AlgoSummary sum;
        sum.algo = algo;
        double mse_sum = 0.0, db_sum = 0.0, lin_sum = 0.0;
        int finite = 0;
        std::optional<MotionField> prev;

        for (int tau = scfg.ref_distance; tau < n; ++tau) {
            const Frame& cur = frames[std::size_t(tau)];
            const Frame& ref = frames[std::size_t(tau - scfg.ref_distance)];
            const AlphaPlane* ca = masks.empty() ? nullptr : &masks[std::size_t(tau)];
            const AlphaPlane* ra =
                masks.empty() ? nullptr : &masks[std::size_t(tau - scfg.ref_distance)];

            auto [field, stats] = estimate_field(algo, cur, ref, ca, ra,
                                                 prev ? &*prev : nullptr, scfg, cfg.prs, opts);
            const Frame pred = predict_frame(ref, field, scfg);
            const PsnrResult pr = psnr(cur, pred);

            FrameReport rep;
            rep.frame = tau;
            rep.algo = algo;
            rep.psnr = pr;
            rep.comparisons = stats.block_comparisons;
            rep.dpd_steps = stats.dpd_refinement_steps;
            rep.n_opaque = stats.blocks_opaque;
            rep.n_boundary = stats.blocks_boundary;
            rep.n_transparent = stats.blocks_transparent;
            rep.elapsed_us = stats.elapsed.count();
            if (rep.blocks_estimated() > 0) {
                rep.avg_search_points =
                    double(rep.comparisons) / double(rep.blocks_estimated());
            }

            if (csv.is_open()) {
                csv << csv_row(rep) << '\n';
                csv.flush();
            }
            if (!cfg.dump_dir.empty()) {
                const ResidualPlane res = residual(cur, pred);
                dump_artifacts(cur, pred, res, field,
                               cfg.dump_dir + "/" + to_string(algo));
            }

            ++sum.frame_pairs;
            mse_sum += pr.mse;
            if (pr.psnr_db) {
                db_sum += *pr.psnr_db;
                lin_sum += *pr.psnr_linear;
                ++finite;
            }
            sum.total_comparisons += rep.comparisons;
            sum.total_dpd_steps += rep.dpd_steps;
            sum.total_blocks_estimated += rep.blocks_estimated();
            sum.total_elapsed_us += rep.elapsed_us;
            result.reports.push_back(rep);
            if (algo == Algo::PA) prev = std::move(field);
        }

        if (sum.frame_pairs > 0) sum.mean_mse = mse_sum / sum.frame_pairs;
        if (finite > 0) {
            sum.mean_psnr_db = db_sum / finite;
            sum.mean_psnr_linear = lin_sum / finite;
        }
        if (sum.frame_pairs > 0 && sum.mean_mse > 0.0) {
            sum.psnr_db_of_mean_mse = 10.0 * std::log10(255.0 * 255.0 / sum.mean_mse);
        }
        if (sum.total_blocks_estimated > 0) {
            sum.avg_search_points =
                double(sum.total_comparisons + sum.total_dpd_steps) /
                double(sum.total_blocks_estimated);
            if (sum.mean_psnr_linear && sum.avg_search_points > 0.0) {
                sum.indicator = figure_of_merit(*sum.mean_psnr_linear, scfg.search_range,
                                                sum.avg_search_points);
            }
        }
        result.summaries.push_back(sum);
    }
    return result;
}

// --- Synthetic sequences -------------------------------------------------

SynthKind synth_kind_from_string(const std::string& name) {
    if (name == "global-translation") return SynthKind::GlobalTranslation;
    if (name == "moving-square") return SynthKind::MovingSquare;
    if (name == "accelerating-object") return SynthKind::AcceleratingObject;
    throw std::invalid_argument("unknown synthetic kind: " + name);
}

void SynthParams::validate(SynthKind kind) const {
    check_dimensions(width, height);
    if (frames < 1) throw std::invalid_argument("synthetic sequence needs at least one frame");
    if (kind != SynthKind::GlobalTranslation) {
        if (square < 8 || square > std::min(width, height) - 16) {
            throw std::invalid_argument("object size out of range for the frame");
        }
        if (std::abs(dx) >= width - square || std::abs(dy) >= height - square) {
            throw std::invalid_argument("object velocity too large for the frame");
        }
        if (kind == SynthKind::AcceleratingObject &&
            (accel < 0 || vmax < 1 || vmax >= std::min(width, height) - square)) {
            throw std::invalid_argument("invalid acceleration parameters");
        }
    }
}

Plane smooth_noise(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    Plane p(width, height);
    for (auto& s : p.data) s = static_cast<std::uint8_t>(dist(rng));

    const auto clampi = [](int v, int hi) { return std::clamp(v, 0, hi); };
    for (int pass = 0; pass < 3; ++pass) {
        Plane q(width, height);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                int sum = 0;
                for (int j = -1; j <= 1; ++j) {
                    for (int i = -1; i <= 1; ++i) {
                        sum += p.at(clampi(x + i, width - 1), clampi(y + j, height - 1));
                    }
                }
                q.at(x, y) = static_cast<std::uint8_t>((sum + 4) / 9);
            }
        }
        p = std::move(q);
    }

    // Blurring contracts toward mid-gray; stretch back to full range so
    // integer SAD landscapes keep distinct values and usable gradients.
    std::uint8_t lo = 255, hi = 0;
    for (std::uint8_t s : p.data) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (hi > lo) {
        for (auto& s : p.data) {
            s = static_cast<std::uint8_t>((int(s) - lo) * 255 / (hi - lo));
        }
    }
    return p;
}

std::pair<int, int> synth_object_position(SynthKind kind, const SynthParams& p, int t) {
    p.validate(kind);
    if (kind == SynthKind::GlobalTranslation) {
        throw std::invalid_argument("global translation has no object");
    }
    int x = 8, y = 8;
    int vx = p.dx, vy = p.dy;
    const int max_x = p.width - p.square;
    const int max_y = p.height - p.square;
    const auto reflect = [](int& pos, int& vel, int hi) {
        if (pos < 0) {
            pos = -pos;
            vel = -vel;
        }
        if (pos > hi) {
            pos = 2 * hi - pos;
            vel = -vel;
        }
    };
    const auto grow = [&](int& vel) {
        const int mag = std::min(std::abs(vel) + p.accel, p.vmax);
        vel = (vel < 0) ? -mag : mag;
    };
    for (int i = 0; i < t; ++i) {
        x += vx;
        y += vy;
        reflect(x, vx, max_x);
        reflect(y, vy, max_y);
        if (kind == SynthKind::AcceleratingObject) {
            grow(vx);
            grow(vy);
        }
    }
    return {x, y};
}

std::vector<Frame> synth_frames(SynthKind kind, const SynthParams& p) {
    p.validate(kind);
    std::vector<Frame> out;
    out.reserve(std::size_t(p.frames));
    if (kind == SynthKind::GlobalTranslation) {
        const Plane base = smooth_noise(p.width, p.height, p.seed);
        for (int t = 0; t < p.frames; ++t) {
            Plane f(p.width, p.height);
            const int sx = t * p.dx;
            const int sy = t * p.dy;
            for (int y = 0; y < p.height; ++y) {
                for (int x = 0; x < p.width; ++x) {
                    f.at(x, y) = base.at(std::clamp(x + sx, 0, p.width - 1),
                                         std::clamp(y + sy, 0, p.height - 1));
                }
            }
            out.push_back(make_frame(std::move(f), t));
        }
        return out;
    }

    const Plane bg = smooth_noise(p.width, p.height, p.seed);
    const Plane obj = smooth_noise(p.square, p.square, p.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int t = 0; t < p.frames; ++t) {
        const auto [ox, oy] = synth_object_position(kind, p, t);
        Plane f = bg;
        for (int y = 0; y < p.square; ++y) {
            for (int x = 0; x < p.square; ++x) {
                f.at(ox + x, oy + y) = obj.at(x, y);
            }
        }
        out.push_back(make_frame(std::move(f), t));
    }
    return out;
}

std::vector<AlphaPlane> synth_masks(SynthKind kind, const SynthParams& p) {
    p.validate(kind);
    std::vector<AlphaPlane> out;
    out.reserve(std::size_t(p.frames));
    for (int t = 0; t < p.frames; ++t) {
        Plane m(p.width, p.height, kind == SynthKind::GlobalTranslation ? 255 : 0);
        if (kind != SynthKind::GlobalTranslation) {
            const auto [ox, oy] = synth_object_position(kind, p, t);
            for (int y = 0; y < p.square; ++y) {
                for (int x = 0; x < p.square; ++x) {
                    m.at(ox + x, oy + y) = 255;
                }
            }
        }
        out.push_back(binarize(m));
    }
    return out;
}

void generate_synthetic(SynthKind kind, const SynthParams& p, const std::string& video_path,
                        const std::string& mask_pattern) {
    const std::vector<Frame> frames = synth_frames(kind, p);
    {
        const auto parent = std::filesystem::path(video_path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        std::ofstream out(video_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + video_path);
        for (const Frame& f : frames) append_i420_frame(out, f);
    }
    if (!mask_pattern.empty()) {
        const std::vector<AlphaPlane> masks = synth_masks(kind, p);
        MaskSource ms;
        ms.pattern = mask_pattern;
        for (int t = 0; t < p.frames; ++t) {
            const std::string path = ms.path_for(t);
            const auto parent = std::filesystem::path(path).parent_path();
            if (!parent.empty()) std::filesystem::create_directories(parent);
            write_gray_pgm(masks[std::size_t(t)].mask, path);
        }
    }
}

}  // namespace me
