#include <algorithm>
#include <cmath>
#include <numeric>

#include "texroi/learn.hpp"
#include "texroi/rng.hpp"

namespace texroi::learn {

namespace {

void check_two_classes(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw error("metrics: score/label size mismatch");
    if (scores.empty()) throw error("metrics: empty input");
    bool pos = false, neg = false;
    for (int y : labels) (y ? pos : neg) = true;
    if (!pos || !neg) throw error("metrics: both classes must be present");
}

// indices sorted by descending score (stable for determinism)
std::vector<size_t> order_desc(const std::vector<double>& scores) {
    std::vector<size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return scores[a] > scores[b]; });
    return idx;
}

}  // namespace

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    // average ranks over ties, then the Mann-Whitney statistic
    std::vector<size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });
    std::vector<double> rank(scores.size());
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) rank[idx[k]] = avg;
        i = j + 1;
    }
    double rank_sum_pos = 0.0;
    double n_pos = 0.0, n_neg = 0.0;
    for (size_t k = 0; k < scores.size(); ++k) {
        if (labels[k]) {
            rank_sum_pos += rank[k];
            n_pos += 1.0;
        } else {
            n_neg += 1.0;
        }
    }
    return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    const auto idx = order_desc(scores);
    double n_pos = 0.0;
    for (int y : labels) n_pos += y ? 1.0 : 0.0;

    double ap = 0.0;
    double tp = 0.0, fp = 0.0, prev_recall = 0.0;
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;  // group of tied scores forms a single threshold
        while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        for (size_t k = i; k <= j; ++k) {
            if (labels[idx[k]]) tp += 1.0;
            else fp += 1.0;
        }
        const double recall = tp / n_pos;
        const double precision = tp / (tp + fp);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j + 1;
    }
    return ap;
}

std::vector<CurvePoint> roc_curve(const std::vector<double>& scores,
                                  const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    const auto idx = order_desc(scores);
    double n_pos = 0.0, n_neg = 0.0;
    for (int y : labels) (y ? n_pos : n_neg) += 1.0;

    std::vector<CurvePoint> curve{{0.0, 0.0}};
    double tp = 0.0, fp = 0.0;
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        for (size_t k = i; k <= j; ++k) (labels[idx[k]] ? tp : fp) += 1.0;
        curve.push_back({fp / n_neg, tp / n_pos});
        i = j + 1;
    }
    return curve;  // last point is (1,1) by construction
}

std::vector<CurvePoint> pr_curve(const std::vector<double>& scores,
                                 const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    const auto idx = order_desc(scores);
    double n_pos = 0.0;
    for (int y : labels) n_pos += y ? 1.0 : 0.0;

    std::vector<CurvePoint> curve{{0.0, 1.0}};
    double tp = 0.0, fp = 0.0;
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        for (size_t k = i; k <= j; ++k) (labels[idx[k]] ? tp : fp) += 1.0;
        curve.push_back({tp / n_pos, tp / (tp + fp)});
        i = j + 1;
    }
    return curve;
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& scores,
                                       const std::vector<int>& labels, const MetricFn& metric,
                                       int n_boot, uint64_t seed) {
    check_two_classes(scores, labels);
    if (n_boot < 2) throw error("bootstrap_ci: need >= 2 resamples");
    std::vector<size_t> pos_idx, neg_idx;
    for (size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos_idx : neg_idx).push_back(i);

    Rng rng(seed);
    std::vector<double> stats(static_cast<size_t>(n_boot));
    std::vector<double> s(scores.size());
    std::vector<int> y(labels.size());
    for (int b = 0; b < n_boot; ++b) {
        size_t k = 0;
        for (size_t i = 0; i < pos_idx.size(); ++i, ++k) {
            const size_t src = pos_idx[rng.bounded(pos_idx.size())];
            s[k] = scores[src];
            y[k] = 1;
        }
        for (size_t i = 0; i < neg_idx.size(); ++i, ++k) {
            const size_t src = neg_idx[rng.bounded(neg_idx.size())];
            s[k] = scores[src];
            y[k] = 0;
        }
        stats[static_cast<size_t>(b)] = metric(s, y);
    }
    std::sort(stats.begin(), stats.end());
    auto percentile = [&](double q) {
        const double pos = q * (static_cast<double>(stats.size()) - 1.0);
        const size_t lo = static_cast<size_t>(std::floor(pos));
        const size_t hi = std::min(lo + 1, stats.size() - 1);
        const double t = pos - static_cast<double>(lo);
        return stats[lo] * (1.0 - t) + stats[hi] * t;
    };
    return {percentile(0.025), percentile(0.975)};
}

}  // namespace texroi::learn
