#ifndef PARETO_PARAMETRIZATION_HPP
#define PARETO_PARAMETRIZATION_HPP

#include <cstdint>
#include <vector>

#include "pareto/core.hpp"

namespace pareto {

enum class ParametrizationKind { chain, patch };

/// Piecewise-linear local front. A chain interpolates its nodes over knots
/// t in [-1, 1]; a patch is the convex hull x_c + sum_j r_j (x_j - x_c) with
/// r >= 0, sum r <= 1, node 0 being the center.
struct FrontParametrization {
    ParametrizationKind kind = ParametrizationKind::chain;
    std::vector<std::int64_t> ids;
    std::vector<ParamVector> xs;
    std::vector<ObjectiveValues> fs;
    /// Chain only; strictly increasing, {0} for a single node.
    std::vector<double> knots;
};

/// Orders a parent-linked path of records end to end, oriented so f1 grows
/// with t, and places knots by cumulative objective-space arc length.
/// Throws StructureError when the records are not a single path.
FrontParametrization build_chain(const std::vector<ParetoRecord>& records);

/// Patch around `center` spanned by records whose parent is the center.
FrontParametrization build_patch(const ParetoRecord& center, const std::vector<ParetoRecord>& children);

/// Chain point at t; a knot returns its stored x exactly.
ParamVector sample_parametrization(const FrontParametrization& p, double t);
/// Patch point at simplex weights r (one per child).
ParamVector sample_parametrization(const FrontParametrization& p, const Eigen::VectorXd& r);

struct FrontSample {
    double t = 0.0;
    ObjectiveValues f;
    bool retained = true;
};

struct CropInterval {
    std::size_t segment = 0;
    double t_begin = 0.0;
    double t_end = 0.0;
    /// Segment owning the first sample that dominated this run.
    std::size_t dominated_by = 0;
};

struct StitchPoint {
    std::size_t segment = 0;
    double t = 0.0;
};

struct StitchedFront {
    std::vector<FrontParametrization> segments;
    /// samples[i][j] is segment i at grid point j.
    std::vector<std::vector<FrontSample>> samples;
    std::vector<StitchPoint> stitch_points;
    std::vector<CropInterval> crop_log;

    /// Retained t-length of segment i (grid spacing times retained samples).
    double retained_measure(std::size_t segment) const;
};

inline constexpr int kDefaultStitchGrid = 201;

/// Samples every chain on a uniform t-grid, drops each sample dominated by
/// any sample of the union, and records where a crop caused by another
/// segment begins or ends. Patches are not supported.
StitchedFront stitch_fronts(Problem& problem, const std::vector<FrontParametrization>& fronts,
                            int grid = kDefaultStitchGrid);

} // namespace pareto

#endif
