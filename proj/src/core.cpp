#include "pareto/core.hpp"

#include <cmath>

namespace pareto {

bool dominates(const ObjectiveValues& a, const ObjectiveValues& b) {
    if (a.size() != b.size()) {
        throw DimensionError("dominates: objective vectors differ in length");
    }
    bool strictly_better = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::size_t> nondominated_filter(std::span<const ObjectiveValues> points) {
    std::vector<std::size_t> kept;
    if (points.empty()) return kept;
    const auto m = points.front().size();
    for (const auto& p : points) {
        if (p.size() != m) throw DimensionError("nondominated_filter: mixed objective counts");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) kept.push_back(i);
    }
    return kept;
}

void require_finite(const Eigen::VectorXd& v, std::string_view what) {
    if (!v.allFinite()) {
        throw DimensionError(std::string(what) + ": non-finite entry");
    }
}

void Problem::check_point(const ParamVector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) {
        throw DimensionError(name() + ": expected " + std::to_string(dim()) +
                             " parameters, got " + std::to_string(x.size()));
    }
}

ObjectiveValues Problem::evaluate(const ParamVector& x) {
    check_point(x);
    ++counters_.n_f;
    return do_evaluate(x);
}

GradientMatrix Problem::gradients(const ParamVector& x) {
    check_point(x);
    ++counters_.n_grad;
    return do_gradients(x);
}

ParamVector Problem::hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) {
    check_point(x);
    check_point(v);
    if (static_cast<std::size_t>(alpha.size()) != num_objectives()) {
        throw DimensionError(name() + ": alpha length does not match objective count");
    }
    if ((alpha.array() < 0.0).any() || std::abs(alpha.sum() - 1.0) > 1e-9) {
        throw DomainError(name() + ": hvp weights must lie on the simplex");
    }
    counters_.n_hvp += num_objectives();
    return do_hvp(x, alpha, v);
}

std::string_view to_string(Stage stage) {
    switch (stage) {
    case Stage::seed: return "seed";
    case Stage::optimized: return "optimized";
    case Stage::expanded: return "expanded";
    }
    return "unknown";
}

Stage stage_from_string(std::string_view text) {
    if (text == "seed") return Stage::seed;
    if (text == "optimized") return Stage::optimized;
    if (text == "expanded") return Stage::expanded;
    throw DomainError("unknown stage '" + std::string(text) + "'");
}

GradientMatrix gradients_of(const ParetoRecord& record, Problem& problem) {
    if (record.grads) return *record.grads;
    return problem.gradients(record.x);
}

} // namespace pareto
