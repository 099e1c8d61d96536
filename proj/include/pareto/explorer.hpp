#ifndef PARETO_EXPLORER_HPP
#define PARETO_EXPLORER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pareto/core.hpp"
#include "pareto/expansion.hpp"

namespace pareto {

struct MgdaOptions {
    /// Sufficient-decrease constant: a step is accepted when every objective
    /// drops by at least armijo * eta * |d|^2. Zero gives plain non-increase.
    double armijo = 1e-4;
    double initial_step = 1.0;
    double decay = 0.9;
    double min_step = 1e-10;
    /// Consecutive failed line searches before giving up.
    int stall_limit = 5;
};

/// Line search failed repeatedly; carries the best iterate seen.
class StalledError : public NumericError {
public:
    StalledError(const std::string& what, ParetoRecord best) : NumericError(what), best_(std::move(best)) {}
    const ParetoRecord& best() const { return best_; }

private:
    ParetoRecord best_;
};

/// Weighted-sum objective grew tenfold over its starting value.
class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, std::vector<ParetoRecord> trajectory)
        : NumericError(what), trajectory_(std::move(trajectory)) {}
    const std::vector<ParetoRecord>& trajectory() const { return trajectory_; }

private:
    std::vector<ParetoRecord> trajectory_;
};

/// MGDA with a backtracking line search (step 1, decay 0.9, floor 1e-10).
/// Stops once the stationarity residual is <= tol or after max_iters steps.
/// The returned record carries f, gradients and alpha at its own x.
ParetoRecord pareto_optimize_mgda(Problem& problem, const ParamVector& x0, double tol, int max_iters,
                                  const MgdaOptions& options = {});

/// Gradient descent on sum_i w_i f_i with step lr0 / sqrt(t + 1). Returns
/// iters + 1 records (the start included), each parented on the previous.
std::vector<ParetoRecord> weighted_sum_gd(Problem& problem, const ParamVector& x0, const Eigen::VectorXd& weights,
                                          double lr0, int iters);

enum class OptimizerKind { mgda_linesearch, weighted_sum_gd };

std::string_view to_string(OptimizerKind kind);

struct ExplorationConfig {
    double s = 0.1;
    int k = 2;
    int K = 1;
    int N = 10;
    BetaStrategy beta_strategy = BetaStrategy::standard_normal;
    bool use_correction = true;
    OptimizerKind optimizer = OptimizerKind::mgda_linesearch;
    double tol = 1e-6;
    int max_iters = 2000;
    MgdaOptions mgda;
    /// Only used by weighted_sum_gd; empty means uniform.
    Eigen::VectorXd weights;
    double lr0 = 0.01;
    int ws_iters = 100;
    std::uint64_t rng_seed = 0;

    /// Throws ConfigError on any invalid field.
    void validate(std::size_t m) const;
};

struct ExplorationResult {
    /// Records accepted by the online dominance guard, in acceptance order.
    std::vector<ParetoRecord> raw;
    /// raw after a final nondominated_filter pass.
    std::vector<ParetoRecord> filtered;
    CostCounters optimize_counters;
    CostCounters expand_counters;
    /// Tangent solves attempted (one gradient set each).
    std::size_t expansions = 0;
    /// Children dropped by the online guard, a stalled re-optimization or a
    /// degenerate beta.
    std::size_t rejected = 0;
    std::size_t neutral_directions = 0;
    /// Set when the queue ran dry before N records.
    bool partial = false;
    std::vector<std::string> warnings;
};

/// Breadth-first exploration: optimize x0, then repeatedly pop a record, take
/// K oriented tangent steps x* + s v (targets round-robin from the record's
/// own target), re-optimize each child and keep it unless an earlier output
/// dominates it. Stops at N records or an empty queue.
ExplorationResult explore(Problem& problem, const ParamVector& x0, const ExplorationConfig& config);

} // namespace pareto

#endif
