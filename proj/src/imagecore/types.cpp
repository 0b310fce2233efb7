#include "texroi/imagecore.hpp"

#include <cmath>
#include <queue>

namespace texroi::imagecore {

GrayImage::GrayImage(int w, int h, double spacing, double fill)
    : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill), spacing_mm(spacing) {
    validate();
}

void GrayImage::validate() const {
    if (width < 1 || height < 1)
        throw error("GrayImage: width and height must be >= 1");
    if (pixels.size() != static_cast<size_t>(width) * height)
        throw error("GrayImage: pixel count does not match dimensions");
    if (!(spacing_mm > 0.0))
        throw error("GrayImage: spacing must be > 0");
    for (double v : pixels)
        if (!std::isfinite(v)) throw error("GrayImage: non-finite intensity");
}

std::string to_string(MaskOrigin tag) {
    switch (tag) {
        case MaskOrigin::Adaptive: return "adaptive";
        case MaskOrigin::AdaptiveAverage: return "adaptive_average";
        case MaskOrigin::StandardRect: return "standard_rect";
    }
    return "adaptive";
}

MaskOrigin mask_origin_from_string(const std::string& s) {
    if (s == "adaptive") return MaskOrigin::Adaptive;
    if (s == "adaptive_average") return MaskOrigin::AdaptiveAverage;
    if (s == "standard_rect") return MaskOrigin::StandardRect;
    throw error("unknown mask origin tag: " + s);
}

size_t RoiMask::count() const {
    size_t n = 0;
    for (uint8_t b : bits) n += (b != 0);
    return n;
}

RoiMask::Bbox RoiMask::bbox() const {
    Bbox box{width, height, 0, 0};
    bool any = false;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (!at(x, y)) continue;
            any = true;
            box.x0 = std::min(box.x0, x);
            box.y0 = std::min(box.y0, y);
            box.x1 = std::max(box.x1, x + 1);
            box.y1 = std::max(box.y1, y + 1);
        }
    }
    if (!any) throw error("RoiMask: bbox of empty mask");
    return box;
}

bool RoiMask::connected4() const {
    size_t total = count();
    if (total == 0) return false;
    std::vector<uint8_t> seen(bits.size(), 0);
    std::queue<std::pair<int, int>> q;
    for (int y = 0; y < height && q.empty(); ++y)
        for (int x = 0; x < width && q.empty(); ++x)
            if (at(x, y)) {
                q.emplace(x, y);
                seen[static_cast<size_t>(y) * width + x] = 1;
            }
    size_t reached = 0;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        ++reached;
        for (int k = 0; k < 4; ++k) {
            int nx = x + dx[k], ny = y + dy[k];
            if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
            size_t idx = static_cast<size_t>(ny) * width + nx;
            if (!bits[idx] || seen[idx]) continue;
            seen[idx] = 1;
            q.emplace(nx, ny);
        }
    }
    return reached == total;
}

const std::array<const char*, 5>& LandmarkSet::required_names() {
    static const std::array<const char*, 5> names = {
        "medial_tibia_margin", "lateral_tibia_margin", "tibial_plateau_left",
        "tibial_plateau_right", "medial_condyle_center"};
    return names;
}

const Landmark& LandmarkSet::point(const std::string& name) const {
    for (const auto& p : points)
        if (p.name == name) return p;
    throw error("landmark not found: " + name);
}

bool LandmarkSet::has_point(const std::string& name) const {
    for (const auto& p : points)
        if (p.name == name) return true;
    return false;
}

const std::vector<Point2d>& LandmarkSet::contour(const std::string& name) const {
    auto it = contours.find(name);
    if (it == contours.end()) throw error("contour not found: " + name);
    return it->second;
}

void LandmarkSet::validate(int image_width, int image_height) const {
    for (const char* name : required_names()) {
        int n = 0;
        for (const auto& p : points)
            if (p.name == name) ++n;
        if (n != 1)
            throw error(std::string("landmark '") + name + "' must appear exactly once, found " +
                        std::to_string(n));
    }
    for (const auto& [name, pts] : contours) {
        if (pts.size() < 3)
            throw error("contour '" + name + "' needs >= 3 points");
    }
    if (image_width > 0 && image_height > 0) {
        auto inside = [&](double x, double y) {
            return x >= 0.0 && y >= 0.0 && x <= image_width && y <= image_height;
        };
        for (const auto& p : points)
            if (!inside(p.x, p.y))
                throw error("landmark '" + p.name + "' outside image bounds");
        for (const auto& [name, pts] : contours)
            for (const auto& p : pts)
                if (!inside(p.x, p.y))
                    throw error("contour '" + name + "' has a point outside image bounds");
    }
}

}  // namespace texroi::imagecore
