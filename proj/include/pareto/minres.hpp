#ifndef PARETO_MINRES_HPP
#define PARETO_MINRES_HPP

#include <functional>
#include <vector>

#include "pareto/core.hpp"

namespace pareto {

/// Symmetric linear operator on R^n, applied matrix-free.
using LinearOperator = std::function<ParamVector(const ParamVector&)>;

struct MinresOptions {
    /// Iteration cap k.
    int max_iterations = 50;
    /// Stop once the residual estimate drops to tolerance * |b|.
    double tolerance = 1e-8;
    /// Optional symmetric positive-definite preconditioner, applied as M^{-1} r.
    /// Empty means identity.
    LinearOperator preconditioner;
};

struct MinresReport {
    ParamVector solution;
    /// Residual norm after each iteration; non-increasing.
    std::vector<double> residual_history;
    int iterations_used = 0;
    bool converged = false;
    /// |b - A x| recomputed with one extra operator application.
    double final_residual = 0.0;
    int operator_calls = 0;
};

/// Raised when the Lanczos recurrence produces a NaN; carries the last valid
/// iterate.
class BreakdownError : public NumericError {
public:
    BreakdownError(const std::string& what, MinresReport last) : NumericError(what), last_(std::move(last)) {}
    const MinresReport& last_valid() const { return last_; }

private:
    MinresReport last_;
};

/// Minimum-residual Krylov solve of A x = b from a zero initial guess. A may be
/// indefinite or singular. A nonzero b costs exactly iterations_used + 1
/// operator applications; b = 0 returns x = 0 without touching A. An exact
/// Krylov invariant subspace ends the iteration as converged.
MinresReport minres(const LinearOperator& apply, const ParamVector& b, const MinresOptions& options = {});

} // namespace pareto

#endif
