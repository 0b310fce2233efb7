#include <array>
#include <cmath>

#include "texroi/descriptors.hpp"

namespace texroi::descriptors {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double log2_safe(double p) { return p > 0.0 ? std::log(p) / kLog2 : 0.0; }

// Features 1..13 from one normalized symmetric GLCM.
std::array<double, 13> glcm_features(const std::vector<double>& p, int n, bool* correlation_degenerate) {
    std::vector<double> px(n, 0.0), py(n, 0.0);
    std::vector<double> p_sum(2 * n - 1, 0.0);   // p_{x+y}, index i+j
    std::vector<double> p_diff(n, 0.0);          // p_{x-y}, index |i-j|
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = p[static_cast<size_t>(i) * n + j];
            px[i] += v;
            py[j] += v;
            p_sum[i + j] += v;
            p_diff[std::abs(i - j)] += v;
        }
    }
    double mu_x = 0.0, mu_y = 0.0;
    for (int i = 0; i < n; ++i) {
        mu_x += i * px[i];
        mu_y += i * py[i];
    }
    double var_x = 0.0, var_y = 0.0;
    for (int i = 0; i < n; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[i];
        var_y += (i - mu_y) * (i - mu_y) * py[i];
    }

    std::array<double, 13> f{};
    double asm_ = 0.0, idm = 0.0, ij_p = 0.0, entropy = 0.0, variance = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = p[static_cast<size_t>(i) * n + j];
            asm_ += v * v;
            idm += v / (1.0 + (i - j) * (i - j));
            ij_p += i * j * v;
            entropy -= v * log2_safe(v);
            variance += (i - mu_x) * (i - mu_x) * v;
        }
    }
    f[0] = asm_;  // angular second moment
    double contrast = 0.0;
    for (int k = 0; k < n; ++k) contrast += static_cast<double>(k) * k * p_diff[k];
    f[1] = contrast;
    const double sd = std::sqrt(var_x) * std::sqrt(var_y);
    if (sd > 0.0) {
        f[2] = (ij_p - mu_x * mu_y) / sd;
    } else {
        f[2] = 0.0;  // constant region convention
        if (correlation_degenerate) *correlation_degenerate = true;
    }
    f[3] = variance;  // sum of squares variance
    f[4] = idm;       // inverse difference moment

    double sum_avg = 0.0;
    for (int k = 0; k < 2 * n - 1; ++k) sum_avg += k * p_sum[k];
    f[5] = sum_avg;
    double sum_var = 0.0, sum_ent = 0.0;
    for (int k = 0; k < 2 * n - 1; ++k) {
        sum_var += (k - sum_avg) * (k - sum_avg) * p_sum[k];
        sum_ent -= p_sum[k] * log2_safe(p_sum[k]);
    }
    f[6] = sum_var;  // about the sum mean
    f[7] = sum_ent;
    f[8] = entropy;

    double diff_mean = 0.0;
    for (int k = 0; k < n; ++k) diff_mean += k * p_diff[k];
    double diff_var = 0.0, diff_ent = 0.0;
    for (int k = 0; k < n; ++k) {
        diff_var += (k - diff_mean) * (k - diff_mean) * p_diff[k];
        diff_ent -= p_diff[k] * log2_safe(p_diff[k]);
    }
    f[9] = diff_var;
    f[10] = diff_ent;

    // information measures of correlation (log2 convention throughout)
    double hxy1 = 0.0, hxy2 = 0.0, hx = 0.0, hy = 0.0;
    for (int i = 0; i < n; ++i) {
        hx -= px[i] * log2_safe(px[i]);
        hy -= py[i] * log2_safe(py[i]);
        for (int j = 0; j < n; ++j) {
            const double joint = px[i] * py[j];
            hxy1 -= p[static_cast<size_t>(i) * n + j] * log2_safe(joint);
            hxy2 -= joint * log2_safe(joint);
        }
    }
    const double hmax = std::max(hx, hy);
    f[11] = hmax > 0.0 ? (entropy - hxy1) / hmax : 0.0;
    const double arg = 1.0 - std::exp(-2.0 * (hxy2 - entropy));
    f[12] = arg > 0.0 ? std::sqrt(arg) : 0.0;
    return f;
}

}  // namespace

FeatureVector haralick13(const GrayImage& img, const RoiMask& mask, int levels) {
    if (levels < 2) throw error("haralick: need >= 2 quantization levels");
    if (mask.width != img.width || mask.height != img.height)
        throw error("haralick: mask frame does not match image");

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (mask.at(x, y)) {
                const double v = img.at(x, y);
                if (first) {
                    lo = hi = v;
                    first = false;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
    if (first) throw error("haralick: empty mask");

    bool degenerate = hi == lo;
    std::vector<int> q(img.size(), -1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (mask.at(x, y)) {
                int level = 0;
                if (!degenerate) {
                    level = static_cast<int>((img.at(x, y) - lo) / (hi - lo) * levels);
                    level = std::clamp(level, 0, levels - 1);
                }
                q[static_cast<size_t>(y) * img.width + x] = level;
            }
    const int n = degenerate ? 1 : levels;

    // symmetric GLCMs at distance 1; y points down so 45 deg is up-right
    const int dirs[4][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    std::array<double, 13> mean{};
    size_t total_pairs = 0;
    bool correlation_degenerate = false;
    for (const auto& d : dirs) {
        std::vector<double> glcm(static_cast<size_t>(n) * n, 0.0);
        size_t pairs = 0;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const int a = q[static_cast<size_t>(y) * img.width + x];
                if (a < 0) continue;
                const int nx = x + d[0], ny = y + d[1];
                if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
                const int b = q[static_cast<size_t>(ny) * img.width + nx];
                if (b < 0) continue;
                glcm[static_cast<size_t>(a) * n + b] += 1.0;
                glcm[static_cast<size_t>(b) * n + a] += 1.0;
                ++pairs;
            }
        }
        if (pairs == 0)
            throw error("haralick: no in-mask pixel pairs at distance 1 for some direction");
        total_pairs += pairs;
        for (double& v : glcm) v /= static_cast<double>(2 * pairs);
        const auto f = glcm_features(glcm, n, &correlation_degenerate);
        for (int k = 0; k < 13; ++k) mean[k] += f[k] / 4.0;
    }
    if (total_pairs < 2) throw error("haralick: need >= 2 in-mask pixel pairs");

    FeatureVector fv;
    fv.kind = DescriptorKind::Haralick;
    fv.values.assign(mean.begin(), mean.end());
    fv.roi_tag = mask.origin;
    fv.degenerate = degenerate || correlation_degenerate;
    return fv;
}

}  // namespace texroi::descriptors
