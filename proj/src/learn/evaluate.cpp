#include <algorithm>
#include <set>

#include "texroi/learn.hpp"

namespace texroi::learn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Split {
    MatrixXd X;
    std::vector<int> y;
    std::vector<size_t> rows;  // original indices
};

Split take_rows(const Dataset& data, const std::vector<int>& folds, int fold, bool in_fold) {
    Split s;
    for (size_t i = 0; i < data.labels.size(); ++i)
        if ((folds[i] == fold) == in_fold) s.rows.push_back(i);
    s.X.resize(static_cast<Eigen::Index>(s.rows.size()), data.X.cols());
    s.y.resize(s.rows.size());
    for (size_t k = 0; k < s.rows.size(); ++k) {
        s.X.row(static_cast<Eigen::Index>(k)) = data.X.row(static_cast<Eigen::Index>(s.rows[k]));
        s.y[k] = data.labels[s.rows[k]];
    }
    return s;
}

bool two_classes(const std::vector<int>& y) {
    bool pos = false, neg = false;
    for (int v : y) (v ? pos : neg) = true;
    return pos && neg;
}

void finish_report(EvalReport& rep, int n_boot, uint64_t seed) {
    rep.n_samples = static_cast<int>(rep.pooled_labels.size());
    for (int y : rep.pooled_labels) rep.n_positive += y;
    rep.auc = roc_auc(rep.pooled_scores, rep.pooled_labels);
    rep.ap = average_precision(rep.pooled_scores, rep.pooled_labels);
    rep.auc_ci = bootstrap_ci(rep.pooled_scores, rep.pooled_labels, roc_auc, n_boot, seed);
    rep.ap_ci =
        bootstrap_ci(rep.pooled_scores, rep.pooled_labels, average_precision, n_boot, seed);
    rep.roc = roc_curve(rep.pooled_scores, rep.pooled_labels);
    rep.pr = pr_curve(rep.pooled_scores, rep.pooled_labels);
}

}  // namespace

EvalReport evaluate(const Dataset& data, const std::vector<int>& folds, double lambda,
                    int n_boot, uint64_t seed) {
    data.validate();
    if (folds.size() != data.labels.size()) throw error("evaluate: fold size mismatch");

    std::set<int> fold_ids(folds.begin(), folds.end());
    EvalReport rep;
    for (int fold : fold_ids) {
        auto train = take_rows(data, folds, fold, false);
        auto test = take_rows(data, folds, fold, true);
        FoldMetrics fm;
        fm.fold = fold;
        fm.n_test = static_cast<int>(test.rows.size());
        if (!two_classes(train.y) || !two_classes(test.y)) {
            fm.skipped = true;
            rep.warnings.push_back("fold " + std::to_string(fold) +
                                   " skipped: single-class train or test split");
            rep.per_fold.push_back(fm);
            continue;
        }
        const auto standardizer = fit_standardizer(train.X);
        const auto model = logreg_fit(apply_standardizer(standardizer, train.X), train.y, lambda);
        const VectorXd scores =
            logreg_predict(model, apply_standardizer(standardizer, test.X));
        std::vector<double> s(scores.data(), scores.data() + scores.size());
        fm.auc = roc_auc(s, test.y);
        fm.ap = average_precision(s, test.y);
        rep.per_fold.push_back(fm);
        for (size_t k = 0; k < test.rows.size(); ++k) {
            rep.pooled_scores.push_back(s[k]);
            rep.pooled_labels.push_back(test.y[k]);
        }
    }
    if (rep.pooled_scores.empty() || !two_classes(rep.pooled_labels))
        throw error("evaluate: no usable folds");
    finish_report(rep, n_boot, seed);
    return rep;
}

EvalReport evaluate_external(const Dataset& train, const Dataset& test, double lambda,
                             int n_boot, uint64_t seed) {
    train.validate();
    test.validate();
    if (train.X.cols() != test.X.cols()) throw error("evaluate: feature width mismatch");

    const auto standardizer = fit_standardizer(train.X);
    const auto model = logreg_fit(apply_standardizer(standardizer, train.X), train.labels, lambda);
    const VectorXd scores = logreg_predict(model, apply_standardizer(standardizer, test.X));

    EvalReport rep;
    rep.pooled_scores.assign(scores.data(), scores.data() + scores.size());
    rep.pooled_labels = test.labels;
    if (!two_classes(rep.pooled_labels))
        throw error("evaluate: external test set has a single class");
    finish_report(rep, n_boot, seed);
    return rep;
}

}  // namespace texroi::learn
