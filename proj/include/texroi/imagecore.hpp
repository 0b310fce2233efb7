#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "texroi/common.hpp"

namespace texroi::imagecore {

/// 2-D grayscale raster with physical pixel spacing. Intensities are kept as
/// doubles in [0,1] throughout the pipeline; quantization to 8-bit levels
/// happens only in quantize_8bit and at export.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // row-major
    double spacing_mm = 1.0;     // isotropic mm per pixel

    GrayImage() = default;
    GrayImage(int w, int h, double spacing, double fill = 0.0);

    double at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return pixels.size(); }

    /// Throws if dimensions, spacing, or any intensity violate the invariants.
    void validate() const;
};

enum class MaskOrigin { Adaptive, AdaptiveAverage, StandardRect };

std::string to_string(MaskOrigin tag);
MaskOrigin mask_origin_from_string(const std::string& s);

/// Boolean pixel mask in the same frame as the image it annotates.
struct RoiMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;
    MaskOrigin origin = MaskOrigin::Adaptive;

    RoiMask() = default;
    RoiMask(int w, int h, MaskOrigin tag = MaskOrigin::Adaptive)
        : width(w), height(h), bits(static_cast<size_t>(w) * h, 0), origin(tag) {}

    bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v = true) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }

    size_t count() const;
    bool empty() const { return count() == 0; }

    struct Bbox {
        int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // half-open [x0,x1) x [y0,y1)
        int width() const { return x1 - x0; }
        int height() const { return y1 - y0; }
    };
    /// Tight bounding box of the true pixels. Throws on an empty mask.
    Bbox bbox() const;

    /// True when the set of true pixels forms a single 4-connected component.
    bool connected4() const;
};

struct Landmark {
    std::string name;
    double x = 0.0;
    double y = 0.0;
};

/// Named anatomical points plus closed bone contours for one knee.
/// Coordinates are continuous, with pixel (i,j) covering [i,i+1) x [j,j+1)
/// and its center at (i+0.5, j+0.5).
struct LandmarkSet {
    std::vector<Landmark> points;
    std::map<std::string, std::vector<Point2d>> contours;

    static const std::array<const char*, 5>& required_names();

    const Landmark& point(const std::string& name) const;
    bool has_point(const std::string& name) const;
    const std::vector<Point2d>& contour(const std::string& name) const;

    /// Checks required names present exactly once, contours closed (>= 3
    /// points), and, when bounds are given, all coordinates inside them.
    void validate(int image_width = 0, int image_height = 0) const;
};

// ---------------------------------------------------------------------------
// Raster I/O. Supported: 8/16-bit single-channel PNG and binary PGM (P5).
// ---------------------------------------------------------------------------

/// Loads a grayscale raster and maps intensities linearly onto [0,1]
/// (v / 255 or v / 65535 by bit depth). spacing_mm is recorded verbatim.
GrayImage load_raster(const std::filesystem::path& path, double spacing_mm);

/// Writes img as 8-bit grayscale (PNG or PGM by extension), quantizing each
/// value with round(v*255). load_raster(save_raster(img)) is bit-exact for
/// images already on the 8-bit lattice.
void save_raster(const GrayImage& img, const std::filesystem::path& path);

/// Raw 16-bit grayscale PNG writer (used for label-map export).
void write_png16(const std::filesystem::path& path, int width, int height,
                 const std::vector<uint16_t>& values);

/// Raw 8-bit grayscale PNG writer (used for mask/average-mask export).
void write_png8(const std::filesystem::path& path, int width, int height,
                const std::vector<uint8_t>& values);

// ---------------------------------------------------------------------------
// Landmark I/O. JSON schema:
//   {"points":[{"name":...,"x":...,"y":...}, ...],
//    "contours":{"tibia":[[x,y],...], "femur":[[x,y],...]}}
// ---------------------------------------------------------------------------

LandmarkSet load_landmarks(const std::filesystem::path& path);
void save_landmarks(const LandmarkSet& lm, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Geometry primitives
// ---------------------------------------------------------------------------

/// Tight bounding-box crop of image and mask; spacing preserved.
std::pair<GrayImage, RoiMask> crop_bbox(const GrayImage& img, const RoiMask& mask);

/// Even-odd-rule rasterization of a closed polygon: a pixel is set iff its
/// center (i+0.5, j+0.5) lies inside. Throws on zero-area polygons and on
/// fills that catch no pixel centers.
RoiMask polygon_fill(const std::vector<Point2d>& contour, int width, int height);

}  // namespace texroi::imagecore
