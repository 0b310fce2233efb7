#pragma once

#include <string>
#include <vector>

#include "texroi/imagecore.hpp"

namespace texroi::descriptors {

using imagecore::GrayImage;
using imagecore::MaskOrigin;
using imagecore::RoiMask;

enum class DescriptorKind { LBP, HOG, Haralick, Fractal, Entropy, Composite };

std::string to_string(DescriptorKind kind);
DescriptorKind descriptor_from_string(const std::string& s);

struct FeatureVector {
    DescriptorKind kind = DescriptorKind::LBP;
    std::vector<double> values;
    MaskOrigin roi_tag = MaskOrigin::Adaptive;
    bool degenerate = false;  // e.g. single-level region in haralick13
};

struct LbpParams {
    int radius = 6;    // pixels
    int n_points = 8;  // samples on the circle
    bool uniform = false;  // u2 mapping instead of raw 2^P codes

    void validate() const;
    /// 2^P for raw codes, P*(P-1)+3 for the u2 mapping.
    size_t histogram_size() const;
};

struct HogParams {
    int orientations = 4;
    int cell_w = 10, cell_h = 10;        // pixels per cell
    int block_w = 4, block_h = 4;        // cells per block
    double l2hys_clip = 0.2;

    void validate() const;
};

struct FsaParams {
    double min_scale_mm = 0.2;
    double max_scale_mm = 3.2;
    bool directional = true;  // two line-element FDs; false = single flat-disk FD

    void validate() const;
    /// Structuring-element radii in pixels (1-px steps), derived from spacing.
    std::vector<int> radii_px(double spacing_mm) const;
};

/// Local binary pattern histogram over the mask. For every mask pixel whose
/// full radius-r circle lies inside the image, P points are sampled on the
/// circle (bilinear interpolation, counterclockwise from angle 0); bit k is
/// set iff neighbor_k >= center, and the 2^P-bin histogram of the codes is
/// normalized to sum 1.
FeatureVector lbp_histogram(const GrayImage& img, const RoiMask& mask, const LbpParams& p);

/// Dalal-Triggs style HOG over the mask bounding box: pixels outside the mask
/// are zeroed, gradients are central differences (one-sided at borders),
/// unsigned orientations in [0, 180) with magnitude-weighted votes, full
/// cells only, overlapping blocks at 1-cell stride with L2-Hys normalization,
/// concatenated in row-major block order.
FeatureVector hog_features(const GrayImage& img, const RoiMask& mask, const HogParams& p);

/// First 13 Haralick features from symmetric distance-1 GLCMs at 0/45/90/135
/// degrees, averaged over the four directions. In-mask intensities are
/// quantized to `levels` equal-width bins over the in-mask min/max range;
/// only pairs with both pixels in the mask are counted. A single-level region
/// sets the degenerate flag and defines correlation as 0.
FeatureVector haralick13(const GrayImage& img, const RoiMask& mask, int levels = 64);

/// Directional fractal signature (blanket method): for each radius s, the
/// image is dilated/eroded with a flat 1-D line element of half-length s
/// (horizontal element for the vertical-structure FD, vertical element for
/// the horizontal-structure FD) over in-mask pixels whose whole element is in
/// the mask; A(s) = sum(u_s - l_s)/(2s) and FD = 2 - slope of log A vs log s.
/// Output: [FD_horizontal_structures, FD_vertical_structures], or a single
/// flat-disk FD when p.directional is false.
FeatureVector fractal_dimension_fsa(const GrayImage& img, const RoiMask& mask,
                                    const FsaParams& p);

/// Shannon entropy (bits) of the 256-bin histogram of 8-bit-quantized in-mask
/// intensities.
FeatureVector shannon_entropy(const GrayImage& img, const RoiMask& mask);

/// Concatenation in the given order; kind becomes Composite.
FeatureVector concat_features(const std::vector<FeatureVector>& parts);

}  // namespace texroi::descriptors
