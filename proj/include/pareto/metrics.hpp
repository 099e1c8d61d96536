#ifndef PARETO_METRICS_HPP
#define PARETO_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pareto/core.hpp"

namespace pareto {

enum class HvMode {
    /// exact2d or exact3d chosen from m.
    exact,
    exact2d,
    exact3d,
    monte_carlo,
};

struct HvConfig {
    ObjectiveValues reference;
    HvMode mode = HvMode::exact;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

/// Measure of the union of boxes [min(p, ref), ref]. Points outside the
/// reference box are clipped, not rejected.
double hypervolume(const std::vector<ObjectiveValues>& points, const HvConfig& config);

double hypervolume_2d(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference);
double hypervolume_3d(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference);

struct HvEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Uniform sampling inside the box spanned by the (clipped) points and the
/// reference. Any m.
HvEstimate hv_monte_carlo(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference,
                          std::size_t samples, std::uint64_t seed);

/// Evaluation counts per stage, e.g. {"exp": ..., "opt": ...}.
struct CostReport {
    std::map<std::string, CostCounters> rows;

    /// Componentwise sum with another report, row by row.
    CostReport& merge(const CostReport& other);
    std::string to_text() const;
    std::string to_json() const;
};

CostReport cost_report(const std::map<std::string, CostCounters>& counters_by_stage);

} // namespace pareto

#endif
