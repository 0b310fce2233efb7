#include <algorithm>
#include <map>

#include "texroi/learn.hpp"
#include "texroi/rng.hpp"

namespace texroi::learn {

void CvConfig::validate() const {
    if (k_folds < 2) throw error("cv: k_folds must be >= 2");
}

void Dataset::validate() const {
    const size_t n = sample_ids.size();
    if (n == 0) throw error("dataset: empty");
    if (subject_ids.size() != n || labels.size() != n ||
        static_cast<size_t>(X.rows()) != n)
        throw error("dataset: column lengths disagree");
    if (!X.allFinite()) throw error("dataset: non-finite features");
}

std::vector<int> subjectwise_kfold(const std::vector<std::string>& subject_ids,
                                   const std::vector<int>& labels, const CvConfig& cfg) {
    cfg.validate();
    if (subject_ids.size() != labels.size())
        throw error("kfold: subject/label size mismatch");

    // subject-level label: positive iff any of the subject's samples is
    std::map<std::string, int> subject_label;
    for (size_t i = 0; i < subject_ids.size(); ++i) {
        auto [it, inserted] = subject_label.emplace(subject_ids[i], labels[i]);
        if (!inserted) it->second = it->second || labels[i];
    }
    if (subject_label.size() < static_cast<size_t>(cfg.k_folds))
        throw error("kfold: fewer subjects than folds");

    std::vector<std::string> pos, neg;
    for (const auto& [subject, label] : subject_label)
        (label ? pos : neg).push_back(subject);

    Rng rng(cfg.seed);
    std::map<std::string, int> fold_of;
    for (auto* stratum : {&pos, &neg}) {
        rng.shuffle(*stratum);
        for (size_t i = 0; i < stratum->size(); ++i)
            fold_of[(*stratum)[i]] = static_cast<int>(i % cfg.k_folds);
    }

    std::vector<int> folds(subject_ids.size());
    for (size_t i = 0; i < subject_ids.size(); ++i) folds[i] = fold_of[subject_ids[i]];
    return folds;
}

std::vector<int> recordwise_kfold(size_t n_samples, const std::vector<int>& labels,
                                  const CvConfig& cfg) {
    cfg.validate();
    if (labels.size() != n_samples) throw error("kfold: label size mismatch");
    if (n_samples < static_cast<size_t>(cfg.k_folds))
        throw error("kfold: fewer samples than folds");
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < n_samples; ++i) (labels[i] ? pos : neg).push_back(i);
    Rng rng(cfg.seed);
    std::vector<int> folds(n_samples);
    for (auto* stratum : {&pos, &neg}) {
        rng.shuffle(*stratum);
        for (size_t i = 0; i < stratum->size(); ++i)
            folds[(*stratum)[i]] = static_cast<int>(i % cfg.k_folds);
    }
    return folds;
}

}  // namespace texroi::learn
