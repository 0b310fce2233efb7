#pragma once

#include <utility>

#include "texroi/imagecore.hpp"

namespace texroi::preprocess {

using imagecore::GrayImage;
using imagecore::LandmarkSet;

struct PreprocessConfig {
    double low_percentile = 0.05;
    double high_percentile = 0.99;
    double target_spacing_mm = 0.2;

    void validate() const;
};

struct ContrastResult {
    GrayImage image;
    bool constant_input = false;  // set when p_low == p_high
};

/// Clips intensities to the [p_low, p_high] percentiles (nearest-rank over all
/// pixels) and rescales affinely so p_low -> 0 and p_high -> 1. A constant
/// image maps to all zeros with the flag set.
ContrastResult normalize_contrast(const GrayImage& img, const PreprocessConfig& cfg);

/// Rounds every value onto the 8-bit lattice: v -> round(v*255)/255.
GrayImage quantize_8bit(const GrayImage& img);

/// Resamples to the target spacing with the Catmull-Rom bicubic kernel
/// (a = -0.5), center-aligned coordinates and edge replication for
/// out-of-bounds taps. Output dimensions: round(dim * spacing / target).
GrayImage resample_bicubic(const GrayImage& img, double target_spacing_mm);

/// Rotates image and landmarks so the tibial-plateau segment becomes
/// horizontal. The canvas is expanded to contain the rotated frame (fill 0);
/// the same rigid motion is applied to every landmark and contour point.
std::pair<GrayImage, LandmarkSet> align_rotation(const GrayImage& img, const LandmarkSet& lm);

}  // namespace texroi::preprocess
