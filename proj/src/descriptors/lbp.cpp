#include <cmath>

#include "texroi/descriptors.hpp"

namespace texroi::descriptors {

void LbpParams::validate() const {
    if (radius < 1) throw error("lbp: radius must be >= 1");
    if (n_points < 4) throw error("lbp: need >= 4 sample points");
    if (!uniform && n_points > 24) throw error("lbp: raw histogram limited to 24 points");
}

size_t LbpParams::histogram_size() const {
    if (uniform) return static_cast<size_t>(n_points) * (n_points - 1) + 3;
    return size_t{1} << n_points;
}

namespace {

double bilinear(const GrayImage& img, double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    int x0 = static_cast<int>(fx), y0 = static_cast<int>(fy);
    const double tx = x - fx, ty = y - fy;
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double v00 = img.at(x0, y0), v10 = img.at(x1, y0);
    const double v01 = img.at(x0, y1), v11 = img.at(x1, y1);
    return (1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) + ty * ((1.0 - tx) * v01 + tx * v11);
}

// number of 0/1 transitions around the circular code
int transitions(uint32_t code, int p) {
    int t = 0;
    for (int k = 0; k < p; ++k) {
        const int a = (code >> k) & 1;
        const int b = (code >> ((k + 1) % p)) & 1;
        t += a != b;
    }
    return t;
}

}  // namespace

FeatureVector lbp_histogram(const GrayImage& img, const RoiMask& mask, const LbpParams& p) {
    p.validate();
    if (mask.width != img.width || mask.height != img.height)
        throw error("lbp: mask frame does not match image");

    const int P = p.n_points;
    const double r = p.radius;
    std::vector<double> ox(P), oy(P);
    for (int k = 0; k < P; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / P;
        ox[k] = r * std::cos(a);
        oy[k] = -r * std::sin(a);  // counterclockwise with y pointing down
    }

    // u2 mapping: uniform codes get their own bin, the rest share the last one
    std::vector<int> bin_of;
    size_t n_bins = p.histogram_size();
    if (p.uniform) {
        bin_of.assign(size_t{1} << P, static_cast<int>(n_bins) - 1);
        int next = 0;
        for (uint32_t code = 0; code < (uint32_t{1} << P); ++code)
            if (transitions(code, P) <= 2) bin_of[code] = next++;
    }

    std::vector<double> hist(n_bins, 0.0);
    size_t counted = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!mask.at(x, y)) continue;
            if (x - p.radius < 0 || x + p.radius > img.width - 1 || y - p.radius < 0 ||
                y + p.radius > img.height - 1)
                continue;  // circle would leave the image
            const double center = img.at(x, y);
            uint32_t code = 0;
            for (int k = 0; k < P; ++k) {
                const double v = bilinear(img, x + ox[k], y + oy[k]);
                if (v >= center) code |= uint32_t{1} << k;
            }
            hist[p.uniform ? static_cast<size_t>(bin_of[code]) : code] += 1.0;
            ++counted;
        }
    }
    if (counted == 0) throw error("lbp: no mask pixel has its full neighborhood inside the image");
    for (double& h : hist) h /= static_cast<double>(counted);

    FeatureVector fv;
    fv.kind = DescriptorKind::LBP;
    fv.values = std::move(hist);
    fv.roi_tag = mask.origin;
    return fv;
}

}  // namespace texroi::descriptors
