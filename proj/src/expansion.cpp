#include "pareto/expansion.hpp"

#include <cmath>

#include "pareto/simplex.hpp"

namespace pareto {

std::string_view to_string(BetaStrategy strategy) {
    switch (strategy) {
    case BetaStrategy::standard_normal: return "standard_normal";
    case BetaStrategy::convex_span: return "convex_span";
    case BetaStrategy::one_hot: return "one_hot";
    case BetaStrategy::coin_flip_subset: return "coin_flip_subset";
    }
    return "unknown";
}

BetaStrategy beta_strategy_from_string(std::string_view text) {
    if (text == "standard_normal" || text == "normal") return BetaStrategy::standard_normal;
    if (text == "convex_span" || text == "convex") return BetaStrategy::convex_span;
    if (text == "one_hot") return BetaStrategy::one_hot;
    if (text == "coin_flip_subset" || text == "coin") return BetaStrategy::coin_flip_subset;
    throw ConfigError("unknown beta strategy '" + std::string(text) + "'");
}

BetaSample sample_beta(BetaStrategy strategy, std::size_t m, Rng& rng, std::size_t one_hot_index) {
    const auto size = static_cast<Eigen::Index>(m);
    BetaSample sample{Eigen::VectorXd::Zero(size), strategy};
    switch (strategy) {
    case BetaStrategy::standard_normal:
        do {
            sample.beta = rng.normal_vector(size);
        } while (sample.beta.isZero(0.0));
        break;
    case BetaStrategy::convex_span: {
        for (Eigen::Index i = 0; i < size; ++i) sample.beta[i] = -std::log(1.0 - rng.uniform(0.0, 1.0));
        sample.beta /= sample.beta.sum();
        break;
    }
    case BetaStrategy::one_hot:
        if (one_hot_index >= m) throw DomainError("beta: one-hot index out of range");
        sample.beta[static_cast<Eigen::Index>(one_hot_index)] = 1.0;
        break;
    case BetaStrategy::coin_flip_subset: {
        if (m < 2) throw DomainError("beta: coin flips need at least two objectives");
        while (true) {
            for (Eigen::Index i = 0; i < size; ++i) sample.beta[i] = rng.coin() ? 1.0 : 0.0;
            const double ones = sample.beta.sum();
            if (ones > 0.0 && ones < static_cast<double>(m)) break;
        }
        break;
    }
    }
    return sample;
}

TangentDirection expand_direction(Problem& problem, const ParamVector& x, const GradientMatrix& grads,
                                  const AlphaResult& alpha, const BetaSample& beta, int k, bool use_correction) {
    if (static_cast<std::size_t>(grads.rows()) != problem.num_objectives() || grads.cols() != x.size()) {
        throw DimensionError("expand: gradient matrix does not match the problem");
    }
    if (beta.beta.size() != grads.rows()) throw DimensionError("expand: beta length must equal m");

    ParamVector rhs = grads.transpose() * beta.beta;
    if (use_correction) {
        const ParamVector c = grads.transpose() * alpha.alpha;
        rhs -= c * beta.beta.sum();
    }
    if (rhs.norm() <= kDegenerateRhs * grads.norm()) {
        throw DegenerateSampleError("expand: right-hand side is numerically zero; resample beta");
    }

    MinresOptions options;
    options.max_iterations = k;
    const auto report = minres([&](const ParamVector& v) { return problem.hvp(x, alpha.alpha, v); }, rhs, options);
    const double norm = report.solution.norm();
    if (!(norm > 0.0)) throw DegenerateSampleError("expand: MINRES returned a zero direction");

    TangentDirection out;
    out.v = report.solution / norm;
    out.residual = report.final_residual;
    out.beta_used = beta;
    out.corrected = use_correction;
    out.minres_iterations = report.iterations_used;
    out.operator_calls = report.operator_calls;
    out.residual_history = report.residual_history;
    return out;
}

TangentDirection expand_sampled(Problem& problem, const ParamVector& x, const GradientMatrix& grads,
                                const AlphaResult& alpha, BetaStrategy strategy, Rng& rng, int k,
                                bool use_correction) {
    for (int attempt = 0;; ++attempt) {
        const auto beta = sample_beta(strategy, problem.num_objectives(), rng,
                                      static_cast<std::size_t>(attempt) % problem.num_objectives());
        try {
            return expand_direction(problem, x, grads, alpha, beta, k, use_correction);
        } catch (const DegenerateSampleError&) {
            if (attempt + 1 >= kBetaResampleAttempts) throw;
        }
    }
}

TangentDirection orient_direction(TangentDirection v, const GradientMatrix& grads, std::size_t target_task) {
    if (target_task >= static_cast<std::size_t>(grads.rows())) throw DomainError("orient: target task out of range");
    const double change = grads.row(static_cast<Eigen::Index>(target_task)).dot(v.v);
    if (std::abs(change) <= 1e-12) {
        v.neutral = true;
        return v;
    }
    v.neutral = false;
    if (change > 0.0) v.v = -v.v;
    return v;
}

ObjectiveValues predict_delta_f(const GradientMatrix& grads, const ParamVector& v, double s) {
    if (s < 0.0) throw DomainError("predict: step must be non-negative");
    if (grads.cols() != v.size()) throw DimensionError("predict: direction length");
    return s * (grads * v);
}

NullBasis null_space_basis(Problem& problem, const ParamVector& x, const Eigen::VectorXd& alpha,
                           double eigen_tolerance, std::size_t dense_cap) {
    const auto n = static_cast<Eigen::Index>(problem.dim());
    if (problem.dim() > dense_cap) {
        throw CapabilityError("null space: n = " + std::to_string(n) + " exceeds the dense cap");
    }
    Eigen::MatrixXd H(n, n);
    for (Eigen::Index j = 0; j < n; ++j) H.col(j) = problem.hvp(x, alpha, ParamVector::Unit(n, j));
    H = 0.5 * (H + H.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    NullBasis basis;
    basis.eigen_tolerance = eigen_tolerance;
    basis.spectral_scale = eig.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(eig.eigenvalues()[i]) <= eigen_tolerance * basis.spectral_scale) {
            basis.vectors.push_back(eig.eigenvectors().col(i));
        }
    }
    return basis;
}

std::vector<ObjectiveValues> image_curve_probe(Problem& problem, const ParamVector& x, const ParamVector& d,
                                               const std::vector<double>& t_grid) {
    std::vector<ObjectiveValues> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!std::isfinite(t)) throw DomainError("probe: non-finite grid value");
        out.push_back(problem.evaluate(x + t * d));
    }
    return out;
}

double curvature_kappa(double f1p, double f2p, double f1pp, double f2pp) {
    const double speed2 = f1p * f1p + f2p * f2p;
    if (speed2 == 0.0) throw UndefinedCurvatureError("curvature: zero tangent");
    return (f1p * f2pp - f2p * f1pp) / std::pow(speed2, 1.5);
}

namespace {

struct CurveJet {
    Eigen::Vector2d value, first, second;
};

CurveJet curve_jet(Problem& problem, const ParamVector& x, const ParamVector& d, double h) {
    // The stencil leaves rounding noise on a constant curve, so catch this up front.
    if (d.isZero(0.0)) throw UndefinedCurvatureError("curvature: zero direction");
    const auto f = image_curve_probe(problem, x, d, {-2 * h, -h, 0.0, h, 2 * h});
    CurveJet jet;
    jet.value = f[2];
    jet.first = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
    jet.second = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
    return jet;
}

} // namespace

CurvatureReport augmentation_check(Problem& problem, const ParamVector& x, const ParamVector& v,
                                   const ParamVector& u, double step) {
    if (problem.num_objectives() != 2) throw CapabilityError("augmentation check needs two objectives");
    if (!(step > 0.0)) throw DomainError("augmentation check: step must be positive");
    const auto base = curve_jet(problem, x, v, step);
    const auto aug = curve_jet(problem, x, v + u, step);

    CurvatureReport report;
    report.value_gap = (base.value - aug.value).norm();
    const double cross = base.first.x() * aug.first.y() - base.first.y() * aug.first.x();
    const double dot = base.first.dot(aug.first);
    report.tangent_angle_gap = std::atan2(std::abs(cross), std::abs(dot));
    report.kappa_v = curvature_kappa(base.first.x(), base.first.y(), base.second.x(), base.second.y());
    report.kappa_augmented = curvature_kappa(aug.first.x(), aug.first.y(), aug.second.x(), aug.second.y());
    report.curvature_gap = std::abs(report.kappa_v - report.kappa_augmented);
    return report;
}

} // namespace pareto
