#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "texroi/descriptors.hpp"
#include "texroi/imagecore.hpp"
#include "texroi/learn.hpp"

namespace texroi::segmentation {

using imagecore::GrayImage;
using imagecore::LandmarkSet;
using imagecore::MaskOrigin;
using imagecore::RoiMask;

struct SlicParams {
    int n_regions = 100;
    double compactness_m = 0.08;
    int max_iters = 10;
    bool enforce_connectivity = true;

    void validate() const;
};

/// Per-pixel superpixel labels; -1 marks pixels outside the bone mask.
/// Labels are dense in [0, n_labels).
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;
    int n_labels = 0;

    int32_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
    int32_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }
    bool in_mask(int x, int y) const { return at(x, y) >= 0; }
};

struct SlicDiagnostics {
    std::vector<double> energy;  // sum of D^2 after each assignment step
};

/// Grayscale SLIC over the bone mask. Centers start on a regular grid of step
/// S = sqrt(#bone pixels / n_regions), perturbed to the lowest-gradient pixel
/// in a 3x3 window; pixels are assigned within 2S x 2S windows under
/// D = sqrt(d_c^2 + (d_s/S)^2 m^2) with d_c = 255 |dI| (intensities in [0,1]);
/// centers move to the mean intensity/position of their pixels. Deterministic.
LabelMap slic_segment(const GrayImage& img, const RoiMask& bone, const SlicParams& params,
                      SlicDiagnostics* diag = nullptr);

/// Lattice points over the bone bounding box. Point (r, c) sits at fraction
/// ((c+1)/(cols+1), (r+1)/(rows+1)) of the box; points outside the mask are
/// dropped but keep their lattice index r*cols + c, which identifies the same
/// cell across subjects.
struct GridSpec {
    int rows = 6;
    int cols = 10;

    struct GridPoint {
        int index = 0;  // r * cols + c
        int row = 0, col = 0;
        int x = 0, y = 0;
    };
    std::vector<GridPoint> points;

    int n_points() const { return static_cast<int>(points.size()); }
    const GridPoint* find(int index) const;
};

GridSpec grid_points(const RoiMask& bone, int rows = 6, int cols = 10);

/// Mask of all pixels sharing the superpixel label at p.
RoiMask region_of_point(const LabelMap& labels, int x, int y);

/// region_of_point at an offset from an anatomical margin landmark. The
/// offset magnitude is offset_mm converted through spacing; its sign on each
/// axis points from the landmark toward the bone-mask centroid.
RoiMask anchor_roi(const LabelMap& labels, const LandmarkSet& lm, const std::string& anchor,
                   std::pair<double, double> offset_mm, double spacing_mm);

/// Per-pixel mean of binary masks accumulated in a common reference frame.
struct AverageMask {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    int n_subjects = 0;

    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
};

AverageMask accumulate_masks(const std::vector<RoiMask>& masks);

/// Nearest-neighbor mask resampling into a target frame (used to move
/// per-subject masks into the median-bounding-box reference frame and back).
RoiMask resample_mask_nn(const RoiMask& mask, int target_w, int target_h);

/// Otsu cut on a 256-bin histogram: returns the bin t maximizing between-class
/// variance over all cut points (foreground = bins > t); ties break low.
int otsu_threshold_bin(const std::vector<uint64_t>& hist256);

/// Thresholds the average mask with Otsu's method and keeps the largest
/// 4-connected component; origin tag AdaptiveAverage.
RoiMask otsu_threshold(const AverageMask& avg);

struct StandardRoiResult {
    RoiMask mask;
    bool clamped = false;  // square exceeded the image and was cut back
};

/// Axis-aligned square beneath the tibial plateau: side = round(side_fraction
/// * tibial width), top edge on the plateau line at the medial condyle
/// center's x, horizontally centered on that landmark.
StandardRoiResult standard_roi(const GrayImage& img, const LandmarkSet& lm,
                               double side_fraction = 1.0 / 7.0);

// ---------------------------------------------------------------------------
// Most-informative-region search
// ---------------------------------------------------------------------------

/// One preprocessed subject's inputs to the ranking pass. Pointers must stay
/// valid for the duration of rank_regions.
struct RegionRankSample {
    std::string sample_id;
    std::string subject_id;
    int label = 0;
    const GrayImage* image = nullptr;
    const LabelMap* labels = nullptr;
    const GridSpec* grid = nullptr;
};

struct RegionScore {
    int grid_index = 0;
    int row = 0, col = 0;
    double auc = 0.5;
    int n_samples = 0;
    bool degenerate = false;  // single-class fold encountered, scored 0.5
};

/// For each lattice index: extract the enclosing superpixel per subject,
/// compute LBP features, run subject-wise K-fold logistic regression, and
/// record the mean held-out ROC AUC. Result is sorted by AUC descending with
/// ties broken by grid index.
std::vector<RegionScore> rank_regions(const std::vector<RegionRankSample>& corpus,
                                      const descriptors::LbpParams& lbp,
                                      const learn::CvConfig& cv, double lambda = 1.0,
                                      int jobs = 1);

}  // namespace texroi::segmentation
