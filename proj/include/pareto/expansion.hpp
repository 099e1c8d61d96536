#ifndef PARETO_EXPANSION_HPP
#define PARETO_EXPANSION_HPP

#include <string_view>
#include <vector>

#include "pareto/core.hpp"
#include "pareto/minres.hpp"
#include "pareto/random.hpp"

namespace pareto {

enum class BetaStrategy {
    standard_normal,
    /// Random convex combination of the one-hot basis (Dirichlet(1) weights).
    convex_span,
    one_hot,
    /// Independent fair coin per objective; all-equal draws are rejected.
    coin_flip_subset,
};

std::string_view to_string(BetaStrategy strategy);
BetaStrategy beta_strategy_from_string(std::string_view text);

struct BetaSample {
    Eigen::VectorXd beta;
    BetaStrategy strategy = BetaStrategy::standard_normal;
};

BetaSample sample_beta(BetaStrategy strategy, std::size_t m, Rng& rng, std::size_t one_hot_index = 0);

struct TangentDirection {
    ParamVector v;  // unit norm
    /// |H v_raw - rhs| of the unnormalized MINRES solution.
    double residual = 0.0;
    BetaSample beta_used;
    bool corrected = false;
    /// Set by orient_direction when the predicted change is ~0.
    bool neutral = false;
    int minres_iterations = 0;
    int operator_calls = 0;
    std::vector<double> residual_history;
};

inline constexpr double kDegenerateRhs = 1e-14;
inline constexpr int kBetaResampleAttempts = 8;

/// Solve H(x) v = (grad f^T - c 1^T) beta (c = 0 without correction) with at
/// most k MINRES iterations and normalize. Costs m * (iterations + 1) HVPs.
/// Throws DegenerateSampleError when |rhs| <= 1e-14 |grad f|.
TangentDirection expand_direction(Problem& problem, const ParamVector& x, const GradientMatrix& grads,
                                  const AlphaResult& alpha, const BetaSample& beta, int k, bool use_correction);

/// expand_direction with beta drawn from `strategy`, resampling degenerate
/// draws up to kBetaResampleAttempts times.
TangentDirection expand_sampled(Problem& problem, const ParamVector& x, const GradientMatrix& grads,
                                const AlphaResult& alpha, BetaStrategy strategy, Rng& rng, int k,
                                bool use_correction);

/// Flip v so that the first-order change of objective `target_task` is
/// negative. A change within 1e-12 leaves v as is and sets `neutral`.
TangentDirection orient_direction(TangentDirection v, const GradientMatrix& grads, std::size_t target_task);

/// First-order objective change s * grad f(x) v.
ObjectiveValues predict_delta_f(const GradientMatrix& grads, const ParamVector& v, double s);

struct NullBasis {
    std::vector<ParamVector> vectors;
    double eigen_tolerance = 0.0;
    /// Largest |eigenvalue| of H.
    double spectral_scale = 0.0;
};

inline constexpr std::size_t kDenseHessianCap = 2000;

/// Eigenvectors of H(x) with |lambda| <= eigen_tolerance * max|lambda|, from a
/// dense H assembled with n HVPs. Desk-scale only.
NullBasis null_space_basis(Problem& problem, const ParamVector& x, const Eigen::VectorXd& alpha,
                           double eigen_tolerance, std::size_t dense_cap = kDenseHessianCap);

/// f(x + t d) for each t.
std::vector<ObjectiveValues> image_curve_probe(Problem& problem, const ParamVector& x, const ParamVector& d,
                                               const std::vector<double>& t_grid);

/// Signed curvature of a planar curve from its first and second derivatives.
double curvature_kappa(double f1p, double f2p, double f1pp, double f2pp);

struct CurvatureReport {
    double value_gap = 0.0;
    /// Angle between the two image tangent lines, in [0, pi/2].
    double tangent_angle_gap = 0.0;
    double curvature_gap = 0.0;
    double kappa_v = 0.0;
    double kappa_augmented = 0.0;
};

inline constexpr double kCurvatureProbeStep = 1e-3;

/// Compares c_v(t) = f(x + t v) with c_{v+u}(t) at t = 0 using 5-point central
/// differences. Requires m = 2.
CurvatureReport augmentation_check(Problem& problem, const ParamVector& x, const ParamVector& v,
                                   const ParamVector& u, double step = kCurvatureProbeStep);

} // namespace pareto

#endif
