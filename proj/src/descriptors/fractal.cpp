#include <cmath>

#include "texroi/descriptors.hpp"

namespace texroi::descriptors {

void FsaParams::validate() const {
    if (!(min_scale_mm > 0.0 && min_scale_mm < max_scale_mm))
        throw error("fsa: need 0 < min_scale < max_scale");
}

std::vector<int> FsaParams::radii_px(double spacing_mm) const {
    validate();
    if (!(spacing_mm > 0.0)) throw error("fsa: spacing must be > 0");
    int r_min = std::max(1, static_cast<int>(std::lround(min_scale_mm / spacing_mm)));
    int r_max = static_cast<int>(std::lround(max_scale_mm / spacing_mm));
    std::vector<int> radii;
    for (int r = r_min; r <= r_max; ++r) radii.push_back(r);
    return radii;
}

namespace {

// least-squares slope of y against x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

enum class Element { HorizontalLine, VerticalLine, Disk };

// A(s) = sum over valid pixels of (dilation - erosion) / (2s); a pixel is
// valid when its whole structuring element lies inside the mask.
double blanket_area(const GrayImage& img, const RoiMask& mask, Element el, int s) {
    double sum = 0.0;
    size_t n_valid = 0;
    std::vector<std::pair<int, int>> offsets;
    if (el == Element::HorizontalLine) {
        for (int d = -s; d <= s; ++d) offsets.emplace_back(d, 0);
    } else if (el == Element::VerticalLine) {
        for (int d = -s; d <= s; ++d) offsets.emplace_back(0, d);
    } else {
        for (int dy = -s; dy <= s; ++dy)
            for (int dx = -s; dx <= s; ++dx)
                if (dx * dx + dy * dy <= s * s) offsets.emplace_back(dx, dy);
    }
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!mask.at(x, y)) continue;
            double hi = -1.0, lo = 2.0;
            bool valid = true;
            for (const auto& [dx, dy] : offsets) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height ||
                    !mask.at(nx, ny)) {
                    valid = false;
                    break;
                }
                const double v = img.at(nx, ny);
                hi = std::max(hi, v);
                lo = std::min(lo, v);
            }
            if (!valid) continue;
            sum += hi - lo;
            ++n_valid;
        }
    }
    if (n_valid == 0) return 0.0;
    return sum / (2.0 * s);
}

double fd_from_scales(const GrayImage& img, const RoiMask& mask, Element el,
                      const std::vector<int>& radii) {
    std::vector<double> log_s, log_a;
    for (int s : radii) {
        const double a = blanket_area(img, mask, el, s);
        if (!(a > 0.0))
            throw error("fsa: flat region (A(s) = 0), fractal dimension undefined");
        log_s.push_back(std::log(static_cast<double>(s)));
        log_a.push_back(std::log(a));
    }
    return 2.0 - ls_slope(log_s, log_a);
}

}  // namespace

FeatureVector fractal_dimension_fsa(const GrayImage& img, const RoiMask& mask,
                                    const FsaParams& p) {
    if (mask.width != img.width || mask.height != img.height)
        throw error("fsa: mask frame does not match image");
    const auto radii = p.radii_px(img.spacing_mm);
    if (radii.size() < 3) throw error("fsa: need >= 3 scales for the log-log regression");
    const auto box = mask.bbox();
    const int need = 2 * radii.back();
    if (box.width() <= need || box.height() <= need)
        throw error("fsa: mask bounding box must exceed twice the max radius");

    FeatureVector fv;
    fv.kind = DescriptorKind::Fractal;
    fv.roi_tag = mask.origin;
    if (p.directional) {
        // horizontal structures probed along y, vertical structures along x
        const double fd_horizontal = fd_from_scales(img, mask, Element::VerticalLine, radii);
        const double fd_vertical = fd_from_scales(img, mask, Element::HorizontalLine, radii);
        fv.values = {fd_horizontal, fd_vertical};
    } else {
        fv.values = {fd_from_scales(img, mask, Element::Disk, radii)};
    }
    return fv;
}

}  // namespace texroi::descriptors
