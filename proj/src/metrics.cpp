#include "pareto/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "pareto/random.hpp"

namespace pareto {

namespace {

std::vector<ObjectiveValues> clipped(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference) {
    require_finite(reference, "hypervolume reference");
    std::vector<ObjectiveValues> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != reference.size()) throw DimensionError("hypervolume: point and reference lengths differ");
        require_finite(p, "hypervolume point");
        out.push_back(p.cwiseMin(reference));
    }
    return out;
}

// Assumes clipped input. Sweeps by ascending first coordinate.
double sweep_2d(std::vector<std::pair<double, double>> pts, double r1, double r2) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double floor = r2;
    for (const auto& [a, b] : pts) {
        if (b < floor) {
            area += (r1 - a) * (floor - b);
            floor = b;
        }
    }
    return area;
}

} // namespace

double hypervolume_2d(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference) {
    if (reference.size() != 2) throw DimensionError("exact2d: needs two objectives");
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : clipped(points, reference)) pts.emplace_back(p[0], p[1]);
    return sweep_2d(std::move(pts), reference[0], reference[1]);
}

double hypervolume_3d(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference) {
    if (reference.size() != 3) throw DimensionError("exact3d: needs three objectives");
    // Dominated points would only split z slabs and perturb the rounding.
    const auto all = clipped(points, reference);
    std::vector<ObjectiveValues> pts;
    for (auto i : nondominated_filter(all)) pts.push_back(all[i]);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<std::pair<double, double>> slice;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        slice.emplace_back(pts[i][0], pts[i][1]);
        const double next = i + 1 < pts.size() ? pts[i + 1][2] : reference[2];
        const double depth = next - pts[i][2];
        if (depth > 0.0) volume += depth * sweep_2d(slice, reference[0], reference[1]);
    }
    return volume;
}

double hypervolume(const std::vector<ObjectiveValues>& points, const HvConfig& config) {
    const auto m = config.reference.size();
    switch (config.mode) {
    case HvMode::exact:
        if (m == 2) return hypervolume_2d(points, config.reference);
        if (m == 3) return hypervolume_3d(points, config.reference);
        throw CapabilityError("hypervolume: exact mode supports two or three objectives; use monte_carlo");
    case HvMode::exact2d: return hypervolume_2d(points, config.reference);
    case HvMode::exact3d: return hypervolume_3d(points, config.reference);
    case HvMode::monte_carlo: return hv_monte_carlo(points, config.reference, config.samples, config.seed).value;
    }
    return 0.0;
}

HvEstimate hv_monte_carlo(const std::vector<ObjectiveValues>& points, const ObjectiveValues& reference,
                          std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("monte carlo: need at least one sample");
    const auto pts = clipped(points, reference);
    if (pts.empty()) return {};
    ObjectiveValues lower = reference;
    for (const auto& p : pts) lower = lower.cwiseMin(p);
    const double box = (reference - lower).prod();
    if (!(box > 0.0)) return {};

    Rng rng(seed);
    const auto m = reference.size();
    ObjectiveValues z(m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < m; ++i) z[i] = rng.uniform(lower[i], reference[i]);
        for (const auto& p : pts) {
            if ((p.array() <= z.array()).all()) {
                ++hits;
                break;
            }
        }
    }
    const double q = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * q, box * std::sqrt(q * (1.0 - q) / static_cast<double>(samples))};
}

CostReport& CostReport::merge(const CostReport& other) {
    for (const auto& [stage, counters] : other.rows) rows[stage] += counters;
    return *this;
}

std::string CostReport::to_text() const {
    if (rows.empty()) return "";
    std::size_t width = 5;
    for (const auto& [stage, counters] : rows) width = std::max(width, stage.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "stage" << std::right << std::setw(12) << "#f"
        << std::setw(12) << "#grad" << std::setw(12) << "#hvp" << '\n';
    for (const auto& [stage, c] : rows) {
        out << std::left << std::setw(static_cast<int>(width)) << stage << std::right << std::setw(12) << c.n_f
            << std::setw(12) << c.n_grad << std::setw(12) << c.n_hvp << '\n';
    }
    return out.str();
}

std::string CostReport::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [stage, c] : rows) j[stage] = {{"n_f", c.n_f}, {"n_grad", c.n_grad}, {"n_hvp", c.n_hvp}};
    return j.dump();
}

CostReport cost_report(const std::map<std::string, CostCounters>& counters_by_stage) {
    return CostReport{counters_by_stage};
}

} // namespace pareto
