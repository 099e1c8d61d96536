#ifndef PARETO_SIMPLEX_HPP
#define PARETO_SIMPLEX_HPP

#include "pareto/core.hpp"

namespace pareto {

/// Correction that makes a point exactly stationary: every gradient is
/// shifted by -c, with c = grad f^T alpha.
struct CorrectionResult {
    Eigen::VectorXd alpha;
    ParamVector c;
};

struct MinNormOptions {
    /// Frank-Wolfe duality-gap tolerance, relative to max_i |g_i|^2.
    double gap_tolerance = 1e-10;
    int max_iterations = 10'000;
};

/// Raised when Frank-Wolfe exhausts its iteration cap; carries the best
/// iterate found.
class SolverError : public NumericError {
public:
    SolverError(const std::string& what, AlphaResult best) : NumericError(what), best_(std::move(best)) {}
    const AlphaResult& best() const { return best_; }

private:
    AlphaResult best_;
};

/// argmin over the simplex of |sum_i alpha_i g_i|_2, rows of `grads` being g_i.
/// m = 2 uses the clipped closed form; m >= 3 uses away-step Frank-Wolfe with
/// exact line search followed by an exact solve on the detected support.
/// Identical (including all-zero) gradients yield uniform alpha.
AlphaResult min_norm_alpha(const GradientMatrix& grads, const MinNormOptions& options = {});

/// Solution of the gradient-correction problem: same alpha as
/// min_norm_alpha, c = grad f^T alpha. No second solve is needed.
CorrectionResult corrected_alpha(const GradientMatrix& grads, const MinNormOptions& options = {});

/// Min-norm value; zero iff the point is Pareto stationary.
double stationarity_residual(const GradientMatrix& grads);

} // namespace pareto

#endif
