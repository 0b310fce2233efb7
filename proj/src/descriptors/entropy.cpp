#include <cmath>

#include "texroi/descriptors.hpp"

namespace texroi::descriptors {

std::string to_string(DescriptorKind kind) {
    switch (kind) {
        case DescriptorKind::LBP: return "lbp";
        case DescriptorKind::HOG: return "hog";
        case DescriptorKind::Haralick: return "haralick";
        case DescriptorKind::Fractal: return "fractal";
        case DescriptorKind::Entropy: return "entropy";
        case DescriptorKind::Composite: return "composite";
    }
    return "lbp";
}

DescriptorKind descriptor_from_string(const std::string& s) {
    if (s == "lbp") return DescriptorKind::LBP;
    if (s == "hog") return DescriptorKind::HOG;
    if (s == "haralick") return DescriptorKind::Haralick;
    if (s == "fractal") return DescriptorKind::Fractal;
    if (s == "entropy") return DescriptorKind::Entropy;
    if (s == "composite") return DescriptorKind::Composite;
    throw error("unknown descriptor: " + s);
}

FeatureVector shannon_entropy(const GrayImage& img, const RoiMask& mask) {
    if (mask.width != img.width || mask.height != img.height)
        throw error("entropy: mask frame does not match image");
    std::vector<double> hist(256, 0.0);
    size_t n = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (mask.at(x, y)) {
                int level = static_cast<int>(std::floor(img.at(x, y) * 255.0 + 0.5));
                level = std::clamp(level, 0, 255);
                hist[level] += 1.0;
                ++n;
            }
    if (n == 0) throw error("entropy: empty mask");
    double h = 0.0;
    for (double c : hist) {
        if (c == 0.0) continue;
        const double p = c / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    FeatureVector fv;
    fv.kind = DescriptorKind::Entropy;
    fv.values = {h};
    fv.roi_tag = mask.origin;
    return fv;
}

FeatureVector concat_features(const std::vector<FeatureVector>& parts) {
    if (parts.empty()) throw error("concat_features: need >= 1 part");
    if (parts.size() == 1) return parts.front();
    FeatureVector fv;
    fv.kind = DescriptorKind::Composite;
    fv.roi_tag = parts.front().roi_tag;
    for (const auto& part : parts) {
        fv.values.insert(fv.values.end(), part.values.begin(), part.values.end());
        fv.degenerate = fv.degenerate || part.degenerate;
    }
    return fv;
}

}  // namespace texroi::descriptors
