#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "texroi/common.hpp"

namespace texroi::learn {

/// Per-feature training statistics; zero-variance features get std 1 and a
/// constant flag so they standardize to exactly zero.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    std::vector<uint8_t> constant;

    bool any_constant() const;
};

Standardizer fit_standardizer(const Eigen::MatrixXd& X);
Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& X);

struct LogRegModel {
    Eigen::VectorXd weights;
    double bias = 0.0;
    double lambda = 1.0;
    bool converged = false;
    int n_iters = 0;
    std::vector<double> loss_trace;  // objective after each iterate
};

/// L2-regularized logistic regression:
///   minimize (1/n) sum log(1 + exp(-y~_i z_i)) + (lambda / 2n) ||w||^2
/// with y~ in {-1,+1}, z = Xw + b, bias unpenalized. Deterministic damped
/// Newton from w = 0 (L-BFGS for wide problems), stopping at gradient
/// max-norm <= tol or max_iters.
LogRegModel logreg_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, double lambda,
                       int max_iters = 1000, double tol = 1e-6);

double logreg_loss(const Eigen::MatrixXd& X, const std::vector<int>& y, double lambda,
                   const Eigen::VectorXd& w, double bias);
/// Gradient of the objective; last component is the bias derivative.
Eigen::VectorXd logreg_gradient(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                double lambda, const Eigen::VectorXd& w, double bias);

Eigen::VectorXd logreg_predict(const LogRegModel& model, const Eigen::MatrixXd& X);

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Tie-corrected Mann-Whitney AUC (ties count 1/2).
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Average precision by step-wise integration over descending distinct
/// thresholds, no interpolation.
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

/// ROC staircase from (0,0) to (1,1), one point per distinct threshold.
std::vector<CurvePoint> roc_curve(const std::vector<double>& scores,
                                  const std::vector<int>& labels);
/// Precision-recall points (recall, precision) from recall 0 to 1.
std::vector<CurvePoint> pr_curve(const std::vector<double>& scores,
                                 const std::vector<int>& labels);

using MetricFn = std::function<double(const std::vector<double>&, const std::vector<int>&)>;

/// Percentile 2.5/97.5 interval over n_boot stratified (per-class) resamples
/// with replacement; deterministic given the seed.
std::pair<double, double> bootstrap_ci(const std::vector<double>& scores,
                                       const std::vector<int>& labels, const MetricFn& metric,
                                       int n_boot = 1000, uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct CvConfig {
    int k_folds = 5;
    uint64_t seed = 0;

    void validate() const;
};

/// Subject-wise stratified K-fold: subjects are shuffled within each
/// subject-level-label stratum and dealt round-robin, so all samples of a
/// subject share a fold and per-stratum fold counts differ by <= 1.
/// Returns the fold index of each sample.
std::vector<int> subjectwise_kfold(const std::vector<std::string>& subject_ids,
                                   const std::vector<int>& labels, const CvConfig& cfg);

/// Record-wise split (ignores subjects). Test-harness mode only: exists to
/// demonstrate the leakage that subject-wise splitting prevents.
std::vector<int> recordwise_kfold(size_t n_samples, const std::vector<int>& labels,
                                  const CvConfig& cfg);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct Dataset {
    std::vector<std::string> sample_ids;
    std::vector<std::string> subject_ids;
    std::vector<int> labels;
    Eigen::MatrixXd X;

    void validate() const;
};

struct FoldMetrics {
    int fold = 0;
    double auc = 0.0;
    double ap = 0.0;
    int n_test = 0;
    bool skipped = false;  // single-class test fold
};

struct EvalReport {
    double auc = 0.0, ap = 0.0;
    std::pair<double, double> auc_ci{0.0, 0.0};
    std::pair<double, double> ap_ci{0.0, 0.0};
    std::vector<FoldMetrics> per_fold;
    std::vector<CurvePoint> roc;
    std::vector<CurvePoint> pr;
    std::vector<double> pooled_scores;
    std::vector<int> pooled_labels;
    std::vector<std::string> warnings;
    int n_samples = 0;
    int n_positive = 0;
};

/// Per-fold fit (standardizer + model on the train split), held-out scoring,
/// pooled metrics with bootstrap CIs.
EvalReport evaluate(const Dataset& data, const std::vector<int>& folds, double lambda,
                    int n_boot = 1000, uint64_t seed = 0);

/// Fits once on the full training corpus and scores the external corpus.
EvalReport evaluate_external(const Dataset& train, const Dataset& test, double lambda,
                             int n_boot = 1000, uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

/// JSON schema: {weights:[...], bias, lambda, means:[...], stds:[...],
/// descriptor, roi_tag}.
void save_model(const LogRegModel& model, const Standardizer& standardizer,
                const std::string& descriptor, const std::string& roi_tag,
                const std::filesystem::path& path);

struct LoadedModel {
    LogRegModel model;
    Standardizer standardizer;
    std::string descriptor;
    std::string roi_tag;
};

LoadedModel load_model(const std::filesystem::path& path);

}  // namespace texroi::learn
