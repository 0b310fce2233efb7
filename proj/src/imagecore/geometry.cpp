#include <algorithm>
#include <cmath>

#include "texroi/imagecore.hpp"

namespace texroi::imagecore {

std::pair<GrayImage, RoiMask> crop_bbox(const GrayImage& img, const RoiMask& mask) {
    if (mask.width != img.width || mask.height != img.height)
        throw error("crop_bbox: mask frame does not match image");
    const auto box = mask.bbox();  // throws on empty mask
    GrayImage out(box.width(), box.height(), img.spacing_mm);
    RoiMask out_mask(box.width(), box.height(), mask.origin);
    for (int y = box.y0; y < box.y1; ++y) {
        for (int x = box.x0; x < box.x1; ++x) {
            out.at(x - box.x0, y - box.y0) = img.at(x, y);
            out_mask.set(x - box.x0, y - box.y0, mask.at(x, y));
        }
    }
    return {std::move(out), std::move(out_mask)};
}

RoiMask polygon_fill(const std::vector<Point2d>& contour, int width, int height) {
    if (contour.size() < 3) throw error("polygon_fill: need >= 3 points");
    if (width < 1 || height < 1) throw error("polygon_fill: invalid raster size");

    // shoelace area; zero means degenerate (collinear or repeated points)
    double area2 = 0.0;
    for (size_t i = 0; i < contour.size(); ++i) {
        const auto& a = contour[i];
        const auto& b = contour[(i + 1) % contour.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 == 0.0) throw error("polygon_fill: zero-area polygon yields an empty mask");

    RoiMask mask(width, height, MaskOrigin::Adaptive);
    std::vector<double> crossings;
    for (int row = 0; row < height; ++row) {
        const double py = row + 0.5;
        crossings.clear();
        for (size_t i = 0; i < contour.size(); ++i) {
            const auto& a = contour[i];
            const auto& b = contour[(i + 1) % contour.size()];
            // half-open rule [min_y, max_y): handles shared vertices once
            if ((a.y <= py && py < b.y) || (b.y <= py && py < a.y)) {
                crossings.push_back(a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
        std::sort(crossings.begin(), crossings.end());
        for (size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // pixel centers in [c_k, c_{k+1})
            int x_first = static_cast<int>(std::ceil(crossings[k] - 0.5));
            int x_last = static_cast<int>(std::ceil(crossings[k + 1] - 0.5));  // exclusive
            x_first = std::max(x_first, 0);
            x_last = std::min(x_last, width);
            for (int x = x_first; x < x_last; ++x) mask.set(x, row);
        }
    }
    if (mask.empty()) throw error("polygon_fill: polygon covers no pixel centers (empty mask)");
    return mask;
}

}  // namespace texroi::imagecore
