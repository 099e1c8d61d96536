#include "pareto/explorer.hpp"

#include <cmath>
#include <deque>

#include "pareto/simplex.hpp"

namespace pareto {

namespace {

ParetoRecord make_record(const Problem& problem, const ParamVector& x, const ObjectiveValues& f,
                         const GradientMatrix& grads, AlphaResult alpha) {
    ParetoRecord record;
    record.x = x;
    record.f = f;
    if (problem.dim() * problem.num_objectives() <= kDefaultGradientStorageCap) record.grads = grads;
    record.alpha = std::move(alpha);
    record.stage = Stage::optimized;
    return record;
}

void validate_weights(const Eigen::VectorXd& weights, std::size_t m) {
    if (static_cast<std::size_t>(weights.size()) != m) throw DimensionError("weights: length must equal m");
    if (!weights.allFinite() || weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > 1e-9) {
        throw DomainError("weights must lie on the simplex");
    }
}

} // namespace

ParetoRecord pareto_optimize_mgda(Problem& problem, const ParamVector& x0, double tol, int max_iters,
                                  const MgdaOptions& options) {
    if (!(tol > 0.0)) throw ConfigError("mgda: tolerance must be positive");
    if (max_iters < 0) throw ConfigError("mgda: iteration cap must be non-negative");
    if (!(options.decay > 0.0 && options.decay < 1.0)) throw ConfigError("mgda: decay must be in (0, 1)");

    ParamVector x = x0;
    ObjectiveValues f = problem.evaluate(x);
    int failures = 0;
    for (int iter = 0;; ++iter) {
        const GradientMatrix grads = problem.gradients(x);
        auto alpha = min_norm_alpha(grads);
        if (alpha.min_norm_value <= tol || iter >= max_iters) {
            return make_record(problem, x, f, grads, std::move(alpha));
        }
        const ParamVector& d = alpha.combined;
        const double decrease = options.armijo * d.squaredNorm();
        bool accepted = false;
        for (double eta = options.initial_step; eta >= options.min_step; eta *= options.decay) {
            const ParamVector trial = x - eta * d;
            const ObjectiveValues ft = problem.evaluate(trial);
            if (ft.allFinite() && (ft.array() <= f.array() - eta * decrease).all()) {
                x = trial;
                f = ft;
                accepted = true;
                break;
            }
        }
        if (accepted) {
            failures = 0;
        } else if (++failures >= options.stall_limit) {
            throw StalledError("mgda: line search made no progress", make_record(problem, x, f, grads, alpha));
        }
    }
}

std::vector<ParetoRecord> weighted_sum_gd(Problem& problem, const ParamVector& x0, const Eigen::VectorXd& weights,
                                          double lr0, int iters) {
    validate_weights(weights, problem.num_objectives());
    if (!(lr0 > 0.0)) throw ConfigError("weighted sum: learning rate must be positive");
    if (iters < 0) throw ConfigError("weighted sum: iteration count must be non-negative");

    std::vector<ParetoRecord> trajectory;
    ParamVector x = x0;
    double start = 0.0;
    for (int t = 0;; ++t) {
        const ObjectiveValues f = problem.evaluate(x);
        const GradientMatrix grads = problem.gradients(x);
        ParetoRecord record = make_record(problem, x, f, grads, min_norm_alpha(grads));
        record.id = t;
        if (t > 0) record.parent_id = t - 1;
        trajectory.push_back(std::move(record));

        const double objective = weights.dot(f);
        if (t == 0) start = objective;
        const double limit = start > 0.0 ? 10.0 * start : start + 10.0;
        if (!std::isfinite(objective) || objective > limit) {
            throw DivergenceError("weighted sum: objective diverged", std::move(trajectory));
        }
        if (t == iters) break;
        x -= lr0 / std::sqrt(t + 1.0) * (grads.transpose() * weights);
    }
    return trajectory;
}

std::string_view to_string(OptimizerKind kind) {
    return kind == OptimizerKind::mgda_linesearch ? "mgda_linesearch" : "weighted_sum_gd";
}

void ExplorationConfig::validate(std::size_t m) const {
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("explore: s must be positive");
    if (k < 1) throw ConfigError("explore: k must be at least 1");
    if (K < 1) throw ConfigError("explore: K must be at least 1");
    if (N < 1) throw ConfigError("explore: N must be at least 1");
    if (!(tol > 0.0)) throw ConfigError("explore: tolerance must be positive");
    if (max_iters < 0) throw ConfigError("explore: iteration cap must be non-negative");
    if (optimizer == OptimizerKind::weighted_sum_gd) {
        if (weights.size() != 0) {
            try {
                validate_weights(weights, m);
            } catch (const Error& e) {
                throw ConfigError(std::string("explore: ") + e.what());
            }
        }
        if (!(lr0 > 0.0)) throw ConfigError("explore: learning rate must be positive");
        if (ws_iters < 0) throw ConfigError("explore: iteration count must be non-negative");
    }
}

ExplorationResult explore(Problem& problem, const ParamVector& x0, const ExplorationConfig& config) {
    const std::size_t m = problem.num_objectives();
    config.validate(m);
    Rng rng = Rng(config.rng_seed).split(3);

    auto optimize = [&](const ParamVector& x) {
        if (config.optimizer == OptimizerKind::mgda_linesearch) {
            return pareto_optimize_mgda(problem, x, config.tol, config.max_iters, config.mgda);
        }
        const Eigen::VectorXd w = config.weights.size() != 0
                                      ? config.weights
                                      : Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), 1.0 / m);
        auto trajectory = weighted_sum_gd(problem, x, w, config.lr0, config.ws_iters);
        trajectory.back().parent_id.reset();
        return ParetoRecord(trajectory.back());
    };

    ExplorationResult result;
    auto mark = problem.counters();
    ParetoRecord seed = optimize(x0);
    result.optimize_counters += problem.counters().since(mark);
    seed.id = 0;
    seed.stage = Stage::seed;
    seed.target_task = 0;

    std::vector<ParetoRecord>& output = result.raw;
    output.push_back(std::move(seed));
    std::deque<std::size_t> queue{0};
    std::int64_t next_id = 1;
    const auto budget = static_cast<std::size_t>(config.N);

    while (!queue.empty() && output.size() < budget) {
        const ParetoRecord node = output[queue.front()];
        queue.pop_front();
        for (int j = 0; j < config.K && output.size() < budget; ++j) {
            const std::size_t target = (node.target_task + static_cast<std::size_t>(j)) % m;

            mark = problem.counters();
            ++result.expansions;
            const GradientMatrix grads = problem.gradients(node.x);
            const AlphaResult alpha = min_norm_alpha(grads);
            TangentDirection direction;
            try {
                direction = expand_sampled(problem, node.x, grads, alpha, config.beta_strategy, rng, config.k,
                                           config.use_correction);
            } catch (const DegenerateSampleError& e) {
                result.expand_counters += problem.counters().since(mark);
                ++result.rejected;
                result.warnings.push_back("record " + std::to_string(node.id) + ": " + e.what());
                continue;
            }
            direction = orient_direction(std::move(direction), grads, target);
            if (direction.neutral) ++result.neutral_directions;
            result.expand_counters += problem.counters().since(mark);

            mark = problem.counters();
            std::optional<ParetoRecord> optimized;
            try {
                optimized = optimize(node.x + config.s * direction.v);
            } catch (const StalledError& e) {
                result.warnings.push_back("child of record " + std::to_string(node.id) + ": " + e.what());
            } catch (const DivergenceError& e) {
                result.warnings.push_back("child of record " + std::to_string(node.id) + ": " + e.what());
            }
            result.optimize_counters += problem.counters().since(mark);
            if (!optimized) {
                ++result.rejected;
                continue;
            }
            ParetoRecord& child = *optimized;

            bool dominated = false;
            for (const auto& existing : output) {
                if (dominates(existing.f, child.f)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) {
                ++result.rejected;
                continue;
            }
            child.id = next_id++;
            child.parent_id = node.id;
            child.stage = Stage::expanded;
            child.target_task = target;
            output.push_back(std::move(child));
            queue.push_back(output.size() - 1);
        }
    }

    if (output.size() < budget) {
        result.partial = true;
        result.warnings.push_back("queue exhausted with " + std::to_string(output.size()) + " of " +
                                  std::to_string(budget) + " records");
    }

    std::vector<ObjectiveValues> values;
    values.reserve(output.size());
    for (const auto& record : output) values.push_back(record.f);
    for (std::size_t i : nondominated_filter(values)) result.filtered.push_back(output[i]);
    return result;
}

} // namespace pareto
