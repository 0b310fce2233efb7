#include <algorithm>
#include <cmath>

#include "texroi/preprocess.hpp"

namespace texroi::preprocess {

using imagecore::Landmark;
using imagecore::Point2d;

void PreprocessConfig::validate() const {
    if (!(low_percentile >= 0.0 && low_percentile < high_percentile && high_percentile <= 1.0))
        throw error("preprocess config: need 0 <= low < high <= 1");
    if (!(target_spacing_mm > 0.0)) throw error("preprocess config: target spacing must be > 0");
}

ContrastResult normalize_contrast(const GrayImage& img, const PreprocessConfig& cfg) {
    cfg.validate();
    img.validate();
    std::vector<double> sorted = img.pixels;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = [&](double p) {
        // nearest-rank percentile on the sorted multiset
        long idx = static_cast<long>(std::ceil(p * static_cast<double>(sorted.size()))) - 1;
        idx = std::clamp<long>(idx, 0, static_cast<long>(sorted.size()) - 1);
        return sorted[static_cast<size_t>(idx)];
    };
    const double lo = rank(cfg.low_percentile);
    const double hi = rank(cfg.high_percentile);

    ContrastResult res{GrayImage(img.width, img.height, img.spacing_mm), false};
    if (lo == hi) {
        res.constant_input = true;  // all-zero output
        return res;
    }
    const double scale = 1.0 / (hi - lo);
    for (size_t i = 0; i < img.size(); ++i) {
        double v = std::clamp(img.pixels[i], lo, hi);
        res.image.pixels[i] = (v - lo) * scale;
    }
    return res;
}

GrayImage quantize_8bit(const GrayImage& img) {
    GrayImage out(img.width, img.height, img.spacing_mm);
    for (size_t i = 0; i < img.size(); ++i) {
        const double v = img.pixels[i];
        if (v < -1e-9 || v > 1.0 + 1e-9)
            throw error("quantize_8bit: intensity outside [0,1]");
        const double q = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);  // round half up
        out.pixels[i] = q / 255.0;
    }
    return out;
}

namespace {

// Catmull-Rom weights for the four taps around a sample at fractional offset
// t in [0,1) from tap 1. Normalized so they sum to exactly 1.
void catmull_rom_weights(double t, double w[4]) {
    const double a = -0.5;
    const double t2 = t * t, t3 = t2 * t;
    w[0] = a * (t3 - 2.0 * t2 + t);
    w[1] = (a + 2.0) * t3 - (a + 3.0) * t2 + 1.0;
    w[2] = -(a + 2.0) * t3 + (2.0 * a + 3.0) * t2 - a * t;
    w[3] = a * (t2 - t3);
    const double s = w[0] + w[1] + w[2] + w[3];
    for (int k = 0; k < 4; ++k) w[k] /= s;
}

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// One separable pass along x: for each output column, cubic interpolation of
// the input row at center-aligned source coordinates.
std::vector<double> resample_rows(const std::vector<double>& in, int in_w, int rows, int out_w) {
    std::vector<double> out(static_cast<size_t>(rows) * out_w);
    const double scale = static_cast<double>(in_w) / out_w;
    std::vector<int> idx(static_cast<size_t>(out_w) * 4);
    std::vector<double> wts(static_cast<size_t>(out_w) * 4);
    for (int ox = 0; ox < out_w; ++ox) {
        const double src = (ox + 0.5) * scale - 0.5;
        const double base = std::floor(src);
        const double t = src - base;
        const int b = static_cast<int>(base);
        double w[4];
        catmull_rom_weights(t, w);
        for (int k = 0; k < 4; ++k) {
            idx[ox * 4 + k] = clamp_index(b - 1 + k, in_w);
            wts[ox * 4 + k] = w[k];
        }
    }
    for (int y = 0; y < rows; ++y) {
        const double* row = in.data() + static_cast<size_t>(y) * in_w;
        double* orow = out.data() + static_cast<size_t>(y) * out_w;
        for (int ox = 0; ox < out_w; ++ox) {
            const int* ix = idx.data() + ox * 4;
            const double* w = wts.data() + ox * 4;
            orow[ox] = w[0] * row[ix[0]] + w[1] * row[ix[1]] + w[2] * row[ix[2]] +
                       w[3] * row[ix[3]];
        }
    }
    return out;
}

std::vector<double> transpose(const std::vector<double>& in, int w, int h) {
    std::vector<double> out(in.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out[static_cast<size_t>(x) * h + y] = in[static_cast<size_t>(y) * w + x];
    return out;
}

// Bicubic sample of img at pixel-center coordinates (sx, sy), taps clamped to
// the image. Caller guarantees (sx, sy) is meaningful for its frame.
double sample_bicubic(const GrayImage& img, double sx, double sy) {
    const double bx = std::floor(sx), by = std::floor(sy);
    const double tx = sx - bx, ty = sy - by;
    double wx[4], wy[4];
    catmull_rom_weights(tx, wx);
    catmull_rom_weights(ty, wy);
    const int ix = static_cast<int>(bx), iy = static_cast<int>(by);
    double acc = 0.0;
    for (int ky = 0; ky < 4; ++ky) {
        const int y = clamp_index(iy - 1 + ky, img.height);
        double rowacc = 0.0;
        for (int kx = 0; kx < 4; ++kx) {
            const int x = clamp_index(ix - 1 + kx, img.width);
            rowacc += wx[kx] * img.at(x, y);
        }
        acc += wy[ky] * rowacc;
    }
    return acc;
}

}  // namespace

GrayImage resample_bicubic(const GrayImage& img, double target_spacing_mm) {
    if (!(target_spacing_mm > 0.0)) throw error("resample_bicubic: target spacing must be > 0");
    const int out_w =
        static_cast<int>(std::lround(img.width * img.spacing_mm / target_spacing_mm));
    const int out_h =
        static_cast<int>(std::lround(img.height * img.spacing_mm / target_spacing_mm));
    if (out_w < 1 || out_h < 1) throw error("resample_bicubic: output dimension would be 0");

    auto horiz = resample_rows(img.pixels, img.width, img.height, out_w);
    auto t = transpose(horiz, out_w, img.height);
    auto vert = resample_rows(t, img.height, out_w, out_h);
    auto final = transpose(vert, out_h, out_w);

    GrayImage out(out_w, out_h, target_spacing_mm);
    out.pixels = std::move(final);
    for (double& v : out.pixels) v = std::clamp(v, 0.0, 1.0);  // cubic overshoot
    return out;
}

std::pair<GrayImage, LandmarkSet> align_rotation(const GrayImage& img, const LandmarkSet& lm) {
    const auto& pl = lm.point("tibial_plateau_left");
    const auto& pr = lm.point("tibial_plateau_right");
    const double dx = pr.x - pl.x, dy = pr.y - pl.y;
    if (dx == 0.0 && dy == 0.0) throw error("align_rotation: coincident plateau points");
    const double theta = std::atan2(dy, dx);

    // rigid motion: rotate by -theta about the image center, then translate to
    // the center of the expanded canvas
    const double c = std::cos(theta), s = std::sin(theta);
    const double cx = img.width / 2.0, cy = img.height / 2.0;
    auto fwd = [&](double x, double y) {
        const double rx = x - cx, ry = y - cy;
        return Point2d{c * rx + s * ry, -s * rx + c * ry};  // + new center, added below
    };

    const Point2d corners[4] = {{0, 0},
                                {static_cast<double>(img.width), 0},
                                {0, static_cast<double>(img.height)},
                                {static_cast<double>(img.width), static_cast<double>(img.height)}};
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (int i = 0; i < 4; ++i) {
        const auto p = fwd(corners[i].x, corners[i].y);
        if (i == 0) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
        } else {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const int out_w = std::max(1, static_cast<int>(std::ceil(max_x - min_x - 1e-9)));
    const int out_h = std::max(1, static_cast<int>(std::ceil(max_y - min_y - 1e-9)));
    const double ox = out_w / 2.0, oy = out_h / 2.0;

    GrayImage out(out_w, out_h, img.spacing_mm);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            // inverse map: output continuous coords -> input continuous coords
            const double rx = (x + 0.5) - ox, ry = (y + 0.5) - oy;
            const double sx_cont = c * rx - s * ry + cx;
            const double sy_cont = s * rx + c * ry + cy;
            if (sx_cont < 0.0 || sy_cont < 0.0 || sx_cont >= img.width || sy_cont >= img.height) {
                out.at(x, y) = 0.0;  // background fill
                continue;
            }
            double v = sample_bicubic(img, sx_cont - 0.5, sy_cont - 0.5);
            out.at(x, y) = std::clamp(v, 0.0, 1.0);  // cubic overshoot stays in range
        }
    }

    LandmarkSet out_lm;
    auto map_point = [&](double x, double y) {
        const auto p = fwd(x, y);
        return Point2d{p.x + ox, p.y + oy};
    };
    for (const auto& p : lm.points) {
        const auto q = map_point(p.x, p.y);
        out_lm.points.push_back({p.name, q.x, q.y});
    }
    for (const auto& [name, pts] : lm.contours) {
        std::vector<Point2d> mapped;
        mapped.reserve(pts.size());
        for (const auto& p : pts) mapped.push_back(map_point(p.x, p.y));
        out_lm.contours.emplace(name, std::move(mapped));
    }
    return {std::move(out), std::move(out_lm)};
}

}  // namespace texroi::preprocess
