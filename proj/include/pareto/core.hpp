#ifndef PARETO_CORE_HPP
#define PARETO_CORE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pareto/errors.hpp"

namespace pareto {

/// Decision vector in R^n.
using ParamVector = Eigen::VectorXd;
/// Objective vector in R^m, one loss per task (all minimized).
using ObjectiveValues = Eigen::VectorXd;
/// m x n matrix whose row i is the gradient of objective i.
using GradientMatrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultGradientStorageCap = 1'000'000;

/// Evaluation-cost meter. One `n_grad` is one evaluation of all m gradients
/// at a point; one combined Hessian-vector product adds m to `n_hvp`.
struct CostCounters {
    std::uint64_t n_f = 0;
    std::uint64_t n_grad = 0;
    std::uint64_t n_hvp = 0;

    CostCounters& operator+=(const CostCounters& other) {
        n_f += other.n_f;
        n_grad += other.n_grad;
        n_hvp += other.n_hvp;
        return *this;
    }
    friend CostCounters operator+(CostCounters a, const CostCounters& b) { return a += b; }
    /// Counts accumulated between `earlier` and `*this`.
    CostCounters since(const CostCounters& earlier) const {
        return {n_f - earlier.n_f, n_grad - earlier.n_grad, n_hvp - earlier.n_hvp};
    }
    friend bool operator==(const CostCounters&, const CostCounters&) = default;
};

/// Solution of the min-norm convex combination problem over the simplex.
struct AlphaResult {
    Eigen::VectorXd alpha;
    double min_norm_value = 0.0;
    ParamVector combined;
};

/// True iff a <= b elementwise and a != b. Exact comparison, no epsilon.
bool dominates(const ObjectiveValues& a, const ObjectiveValues& b);

/// Indices of points not dominated by any other point, in input order.
/// Duplicates do not dominate each other and are both kept.
std::vector<std::size_t> nondominated_filter(std::span<const ObjectiveValues> points);

/// Throws DimensionError unless every entry is finite.
void require_finite(const Eigen::VectorXd& v, std::string_view what);

/// Objective oracle with metered access. Every public oracle call bumps
/// exactly one counter; implementations override the protected hooks.
///
/// Instances hold mutable state (counters, caches) and are meant to be owned
/// by one worker at a time; use clone() to hand a copy to another worker and
/// merge the counters afterwards.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::size_t dim() const = 0;
    virtual std::size_t num_objectives() const = 0;
    virtual std::string name() const = 0;
    virtual std::unique_ptr<Problem> clone() const = 0;

    ObjectiveValues evaluate(const ParamVector& x);
    GradientMatrix gradients(const ParamVector& x);
    /// H(x) v with H = sum_i alpha_i * Hessian(f_i)(x).
    ParamVector hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v);

    const CostCounters& counters() const { return counters_; }
    void reset_counters() { counters_ = {}; }

protected:
    Problem() = default;
    Problem(const Problem&) = default;
    Problem& operator=(const Problem&) = default;

    virtual ObjectiveValues do_evaluate(const ParamVector& x) = 0;
    virtual GradientMatrix do_gradients(const ParamVector& x) = 0;
    virtual ParamVector do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha,
                               const ParamVector& v) = 0;

private:
    void check_point(const ParamVector& x) const;
    CostCounters counters_;
};

enum class Stage { seed, optimized, expanded };

std::string_view to_string(Stage stage);
Stage stage_from_string(std::string_view text);

/// One explored solution, mirroring the exploration output tuple
/// (x, f(x), grad f(x), parent).
struct ParetoRecord {
    std::int64_t id = 0;
    ParamVector x;
    ObjectiveValues f;
    /// Absent when m*n exceeds the storage cap; see gradients_of().
    std::optional<GradientMatrix> grads;
    std::optional<AlphaResult> alpha;
    std::optional<std::int64_t> parent_id;
    Stage stage = Stage::seed;
    /// Target objective of the direction that produced this record.
    std::size_t target_task = 0;

    double residual() const { return alpha ? alpha->min_norm_value : -1.0; }
};

/// Stored gradients, or a fresh (metered) evaluation when they were dropped.
GradientMatrix gradients_of(const ParetoRecord& record, Problem& problem);

} // namespace pareto

#endif
