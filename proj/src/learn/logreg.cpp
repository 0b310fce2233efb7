#include <algorithm>
#include <cmath>
#include <deque>

#include "texroi/learn.hpp"

namespace texroi::learn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

bool Standardizer::any_constant() const {
    for (uint8_t c : constant)
        if (c) return true;
    return false;
}

Standardizer fit_standardizer(const MatrixXd& X) {
    if (X.rows() < 2) throw error("standardizer: need >= 2 samples");
    Standardizer s;
    const auto n = static_cast<double>(X.rows());
    s.mean = X.colwise().mean();
    s.stddev.resize(X.cols());
    s.constant.assign(static_cast<size_t>(X.cols()), 0);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double var = (X.col(j).array() - s.mean(j)).square().sum() / n;  // population
        if (var > 0.0) {
            s.stddev(j) = std::sqrt(var);
        } else {
            s.stddev(j) = 1.0;
            s.constant[static_cast<size_t>(j)] = 1;
        }
    }
    return s;
}

MatrixXd apply_standardizer(const Standardizer& s, const MatrixXd& X) {
    if (X.cols() != s.mean.size()) throw error("standardizer: feature width mismatch");
    MatrixXd Z = X;
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        Z.col(j) = (X.col(j).array() - s.mean(j)) / s.stddev(j);
    return Z;
}

namespace {

// log(1 + exp(-m)), stable for both signs
double log1p_exp_neg(double m) {
    if (m > 0.0) return std::log1p(std::exp(-m));
    return -m + std::log1p(std::exp(m));
}

// sigmoid(z), stable
double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_finite(const MatrixXd& X) {
    if (!X.allFinite()) throw error("logreg: non-finite feature values");
}

VectorXd signed_labels(const std::vector<int>& y) {
    VectorXd ys(static_cast<Eigen::Index>(y.size()));
    bool pos = false, neg = false;
    for (size_t i = 0; i < y.size(); ++i) {
        ys(static_cast<Eigen::Index>(i)) = y[i] ? 1.0 : -1.0;
        (y[i] ? pos : neg) = true;
    }
    if (!pos || !neg) throw error("logreg: both classes must be present");
    return ys;
}

}  // namespace

double logreg_loss(const MatrixXd& X, const std::vector<int>& y, double lambda,
                   const VectorXd& w, double bias) {
    const VectorXd ys = signed_labels(y);
    const VectorXd z = X * w + VectorXd::Constant(X.rows(), bias);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) loss += log1p_exp_neg(ys(i) * z(i));
    const double n = static_cast<double>(X.rows());
    return loss / n + 0.5 * lambda / n * w.squaredNorm();
}

VectorXd logreg_gradient(const MatrixXd& X, const std::vector<int>& y, double lambda,
                         const VectorXd& w, double bias) {
    const VectorXd z = X * w + VectorXd::Constant(X.rows(), bias);
    VectorXd resid(z.size());  // sigmoid(z) - y01
    for (Eigen::Index i = 0; i < z.size(); ++i) resid(i) = sigmoid(z(i)) - (y[static_cast<size_t>(i)] ? 1.0 : 0.0);
    const double n = static_cast<double>(X.rows());
    VectorXd g(w.size() + 1);
    g.head(w.size()) = X.transpose() * resid / n + (lambda / n) * w;
    g(w.size()) = resid.sum() / n;
    return g;
}

LogRegModel logreg_fit(const MatrixXd& X, const std::vector<int>& y, double lambda,
                       int max_iters, double tol) {
    if (static_cast<size_t>(X.rows()) != y.size())
        throw error("logreg: label count does not match sample count");
    check_finite(X);
    signed_labels(y);  // validates both classes present
    const Eigen::Index d = X.cols();
    const double n = static_cast<double>(X.rows());

    LogRegModel model;
    model.lambda = lambda;
    model.weights = VectorXd::Zero(d);
    model.bias = 0.0;

    // Newton is exact but cubic in width; fall back to L-BFGS for wide data.
    const bool use_newton = d <= 500;
    const int lbfgs_memory = 10;
    std::deque<VectorXd> s_hist, y_hist;

    VectorXd theta = VectorXd::Zero(d + 1);  // [w; b]
    double loss = logreg_loss(X, y, lambda, model.weights, model.bias);
    model.loss_trace.push_back(loss);
    VectorXd grad = logreg_gradient(X, y, lambda, model.weights, model.bias);

    for (int iter = 0; iter < max_iters; ++iter) {
        if (grad.lpNorm<Eigen::Infinity>() <= tol) {
            model.converged = true;
            break;
        }
        VectorXd direction;
        if (use_newton) {
            const VectorXd z = X * theta.head(d) + VectorXd::Constant(X.rows(), theta(d));
            VectorXd wdiag(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i) {
                const double s = sigmoid(z(i));
                wdiag(i) = s * (1.0 - s);
            }
            MatrixXd H(d + 1, d + 1);
            const MatrixXd Xw = wdiag.asDiagonal() * X;
            H.topLeftCorner(d, d) = X.transpose() * Xw / n;
            H.topLeftCorner(d, d).diagonal().array() += lambda / n;
            H.block(0, d, d, 1) = X.transpose() * wdiag / n;
            H.block(d, 0, 1, d) = H.block(0, d, d, 1).transpose();
            H(d, d) = wdiag.sum() / n;
            direction = -H.ldlt().solve(grad);
        } else {
            // two-loop L-BFGS recursion
            direction = -grad;
            std::vector<double> alpha(s_hist.size());
            for (size_t k = s_hist.size(); k-- > 0;) {
                const double rho = 1.0 / y_hist[k].dot(s_hist[k]);
                alpha[k] = rho * s_hist[k].dot(direction);
                direction -= alpha[k] * y_hist[k];
            }
            if (!s_hist.empty()) {
                const auto& sk = s_hist.back();
                const auto& yk = y_hist.back();
                direction *= sk.dot(yk) / yk.dot(yk);
            }
            for (size_t k = 0; k < s_hist.size(); ++k) {
                const double rho = 1.0 / y_hist[k].dot(s_hist[k]);
                const double beta = rho * y_hist[k].dot(direction);
                direction += (alpha[k] - beta) * s_hist[k];
            }
        }
        double dir_deriv = grad.dot(direction);
        if (!(dir_deriv < 0.0)) {  // fall back to steepest descent
            direction = -grad;
            dir_deriv = -grad.squaredNorm();
        }

        // backtracking line search (Armijo) keeps the loss monotone
        double step = 1.0;
        const double c1 = 1e-4;
        VectorXd theta_new;
        double loss_new = loss;
        for (int ls = 0; ls < 60; ++ls) {
            theta_new = theta + step * direction;
            loss_new = logreg_loss(X, y, lambda, theta_new.head(d), theta_new(d));
            if (loss_new <= loss + c1 * step * dir_deriv) break;
            step *= 0.5;
        }
        if (loss_new > loss) break;  // no further progress representable

        const VectorXd grad_new = logreg_gradient(X, y, lambda, theta_new.head(d), theta_new(d));
        if (!use_newton) {
            VectorXd sk = theta_new - theta;
            VectorXd yk = grad_new - grad;
            if (yk.dot(sk) > 1e-12) {
                s_hist.push_back(std::move(sk));
                y_hist.push_back(std::move(yk));
                if (s_hist.size() > static_cast<size_t>(lbfgs_memory)) {
                    s_hist.pop_front();
                    y_hist.pop_front();
                }
            }
        }
        theta = theta_new;
        grad = grad_new;
        loss = loss_new;
        model.loss_trace.push_back(loss);
        model.n_iters = iter + 1;
    }
    if (!model.converged && grad.lpNorm<Eigen::Infinity>() <= tol) model.converged = true;
    model.weights = theta.head(d);
    model.bias = theta(d);
    if (!model.weights.allFinite() || !std::isfinite(model.bias))
        throw error("logreg: solver produced non-finite parameters");
    return model;
}

VectorXd logreg_predict(const LogRegModel& model, const MatrixXd& X) {
    if (X.cols() != model.weights.size()) throw error("logreg_predict: feature width mismatch");
    const VectorXd z = X * model.weights + VectorXd::Constant(X.rows(), model.bias);
    VectorXd p(z.size());
    const double lo = std::nextafter(0.0, 1.0);
    const double hi = std::nextafter(1.0, 0.0);
    for (Eigen::Index i = 0; i < z.size(); ++i)
        p(i) = std::clamp(sigmoid(z(i)), lo, hi);  // open interval (0,1)
    return p;
}

}  // namespace texroi::learn
