#include <cmath>

#include "texroi/descriptors.hpp"

namespace texroi::descriptors {

void HogParams::validate() const {
    if (orientations < 1) throw error("hog: orientations must be >= 1");
    if (cell_w < 1 || cell_h < 1) throw error("hog: cell size must be >= 1");
    if (block_w < 1 || block_h < 1) throw error("hog: block size must be >= 1");
    if (!(l2hys_clip > 0.0)) throw error("hog: clip must be > 0");
}

FeatureVector hog_features(const GrayImage& img, const RoiMask& mask, const HogParams& p) {
    p.validate();
    if (mask.width != img.width || mask.height != img.height)
        throw error("hog: mask frame does not match image");
    auto [crop, cmask] = imagecore::crop_bbox(img, mask);
    const int w = crop.width, h = crop.height;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!cmask.at(x, y)) crop.at(x, y) = 0.0;

    const int cells_x = w / p.cell_w, cells_y = h / p.cell_h;  // full cells only
    if (cells_x < p.block_w || cells_y < p.block_h)
        throw error("hog: mask bounding box smaller than one block");

    // gradients: central differences, one-sided at the borders
    std::vector<double> gx(crop.size()), gy(crop.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (w == 1)
                gx[i] = 0.0;
            else if (x == 0)
                gx[i] = crop.at(1, y) - crop.at(0, y);
            else if (x == w - 1)
                gx[i] = crop.at(w - 1, y) - crop.at(w - 2, y);
            else
                gx[i] = (crop.at(x + 1, y) - crop.at(x - 1, y)) / 2.0;
            if (h == 1)
                gy[i] = 0.0;
            else if (y == 0)
                gy[i] = crop.at(x, 1) - crop.at(x, 0);
            else if (y == h - 1)
                gy[i] = crop.at(x, h - 1) - crop.at(x, h - 2);
            else
                gy[i] = (crop.at(x, y + 1) - crop.at(x, y - 1)) / 2.0;
        }
    }

    // cell histograms: unsigned orientation in [0, pi), magnitude-weighted
    const int nb = p.orientations;
    std::vector<double> cells(static_cast<size_t>(cells_x) * cells_y * nb, 0.0);
    const double pi = 3.14159265358979323846;
    for (int y = 0; y < cells_y * p.cell_h; ++y) {
        const int cy = y / p.cell_h;
        for (int x = 0; x < cells_x * p.cell_w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            const double mag = std::hypot(gx[i], gy[i]);
            if (mag == 0.0) continue;
            double ang = std::atan2(gy[i], gx[i]);
            if (ang < 0.0) ang += pi;
            if (ang >= pi) ang -= pi;
            int bin = static_cast<int>(ang / pi * nb);
            if (bin >= nb) bin = nb - 1;
            const int cx = x / p.cell_w;
            cells[(static_cast<size_t>(cy) * cells_x + cx) * nb + bin] += mag;
        }
    }

    // overlapping blocks, stride one cell, L2-Hys
    const int blocks_x = cells_x - p.block_w + 1;
    const int blocks_y = cells_y - p.block_h + 1;
    const size_t block_len = static_cast<size_t>(p.block_w) * p.block_h * nb;
    std::vector<double> out;
    out.reserve(static_cast<size_t>(blocks_x) * blocks_y * block_len);
    std::vector<double> block(block_len);
    const double eps2 = 1e-10;
    for (int by = 0; by < blocks_y; ++by) {
        for (int bx = 0; bx < blocks_x; ++bx) {
            size_t k = 0;
            for (int cy = by; cy < by + p.block_h; ++cy)
                for (int cx = bx; cx < bx + p.block_w; ++cx)
                    for (int b = 0; b < nb; ++b)
                        block[k++] = cells[(static_cast<size_t>(cy) * cells_x + cx) * nb + b];
            double norm2 = eps2;
            for (double v : block) norm2 += v * v;
            double inv = 1.0 / std::sqrt(norm2);
            for (double& v : block) v = std::min(v * inv, p.l2hys_clip);
            norm2 = eps2;
            for (double v : block) norm2 += v * v;
            inv = 1.0 / std::sqrt(norm2);
            for (double& v : block) out.push_back(v * inv);
        }
    }

    FeatureVector fv;
    fv.kind = DescriptorKind::HOG;
    fv.values = std::move(out);
    fv.roi_tag = mask.origin;
    return fv;
}

}  // namespace texroi::descriptors
