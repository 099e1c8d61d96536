#include "pareto/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pareto {

namespace {

void validate(const GradientMatrix& grads) {
    if (grads.rows() < 2) throw DimensionError("min-norm: need at least two objectives");
    if (grads.cols() < 1) throw DimensionError("min-norm: empty gradients");
    if (!grads.allFinite()) throw DimensionError("min-norm: non-finite gradient entry");
}

AlphaResult finish(const GradientMatrix& grads, Eigen::VectorXd alpha) {
    alpha = alpha.cwiseMax(0.0);
    alpha /= alpha.sum();
    AlphaResult result;
    result.combined = grads.transpose() * alpha;
    result.min_norm_value = result.combined.norm();
    result.alpha = std::move(alpha);
    return result;
}

AlphaResult two_objective(const GradientMatrix& grads) {
    const ParamVector diff = grads.row(0) - grads.row(1);
    const double denom = diff.squaredNorm();
    Eigen::VectorXd alpha(2);
    if (denom == 0.0) {
        alpha.setConstant(0.5);
    } else {
        const double a = std::clamp(-diff.dot(grads.row(1).transpose()) / denom, 0.0, 1.0);
        alpha << a, 1.0 - a;
    }
    return finish(grads, alpha);
}

// Exact minimizer of a^T Q a on the face spanned by `support`; empty when the
// KKT conditions do not certify it as the global simplex minimizer.
std::optional<Eigen::VectorXd> polish_on_support(const Eigen::MatrixXd& Q, const Eigen::VectorXd& alpha,
                                                 double scale) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > 1e-12) support.push_back(i);
    }
    const auto s = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) kkt(i, j) = Q(support[i], support[j]);
        kkt(i, s) = 1.0;
        kkt(s, i) = 1.0;
    }
    rhs[s] = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    Eigen::VectorXd candidate = Eigen::VectorXd::Zero(alpha.size());
    for (Eigen::Index i = 0; i < s; ++i) {
        if (sol[i] < -1e-14) return std::nullopt;
        candidate[support[i]] = std::max(0.0, sol[i]);
    }
    if (!(candidate.sum() > 0.0)) return std::nullopt;
    candidate /= candidate.sum();
    const Eigen::VectorXd grad = Q * candidate;
    const double value = candidate.dot(grad);
    if (grad.minCoeff() < value - 1e-12 * scale) return std::nullopt;
    if (value > alpha.dot(Q * alpha) + 1e-14 * scale) return std::nullopt;
    return candidate;
}

AlphaResult frank_wolfe(const GradientMatrix& grads, const MinNormOptions& options) {
    const Eigen::MatrixXd Q = grads * grads.transpose();
    const double scale = Q.diagonal().maxCoeff();
    const auto m = grads.rows();
    Eigen::VectorXd alpha = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    if (scale == 0.0) return finish(grads, alpha);

    bool converged = false;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const Eigen::VectorXd grad = Q * alpha;
        const double value = alpha.dot(grad);
        Eigen::Index toward = 0;
        grad.minCoeff(&toward);
        Eigen::Index away = -1;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (alpha[i] > 0.0 && (away < 0 || grad[i] > grad[away])) away = i;
        }
        const double gap = value - grad[toward];
        if (gap <= options.gap_tolerance * scale) {
            converged = true;
            break;
        }
        Eigen::VectorXd direction;
        double max_step = 1.0;
        const double away_gain = grad[away] - value;
        if (gap >= away_gain || alpha[away] >= 1.0) {
            direction = -alpha;
            direction[toward] += 1.0;
        } else {
            direction = alpha;
            direction[away] -= 1.0;
            max_step = alpha[away] / (1.0 - alpha[away]);
        }
        const double slope = grad.dot(direction);
        const double curvature = direction.dot(Q * direction);
        const double step = curvature > 0.0 ? std::clamp(-slope / curvature, 0.0, max_step) : max_step;
        alpha += step * direction;
        alpha = alpha.cwiseMax(0.0);
        alpha /= alpha.sum();
    }

    if (auto exact = polish_on_support(Q, alpha, scale)) return finish(grads, *exact);
    if (!converged) {
        throw SolverError("min-norm: Frank-Wolfe did not converge within the iteration cap", finish(grads, alpha));
    }
    return finish(grads, alpha);
}

} // namespace

AlphaResult min_norm_alpha(const GradientMatrix& grads, const MinNormOptions& options) {
    validate(grads);
    if (grads.rows() == 2) return two_objective(grads);
    return frank_wolfe(grads, options);
}

CorrectionResult corrected_alpha(const GradientMatrix& grads, const MinNormOptions& options) {
    auto result = min_norm_alpha(grads, options);
    return {std::move(result.alpha), std::move(result.combined)};
}

double stationarity_residual(const GradientMatrix& grads) { return min_norm_alpha(grads).min_norm_value; }

} // namespace pareto
