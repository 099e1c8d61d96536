#include "pareto/parametrization.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pareto {

FrontParametrization build_chain(const std::vector<ParetoRecord>& records) {
    if (records.empty()) throw StructureError("chain: no records");
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].f.size() != 2) throw DimensionError("chain: needs two objectives");
        if (!index.emplace(records[i].id, i).second) throw StructureError("chain: duplicate record id");
    }

    std::vector<std::vector<std::size_t>> adjacent(records.size());
    std::size_t roots = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& parent = records[i].parent_id;
        const auto it = parent ? index.find(*parent) : index.end();
        if (it == index.end()) {
            ++roots;
            continue;
        }
        adjacent[i].push_back(it->second);
        adjacent[it->second].push_back(i);
    }
    if (roots != 1) throw StructureError("chain: records do not hang off a single seed");

    std::size_t start = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (adjacent[i].size() > 2) throw StructureError("chain: records branch; build a patch instead");
        if (adjacent[i].size() <= 1 && start == records.size()) start = i;
    }
    if (start == records.size()) throw StructureError("chain: parent links form a cycle");

    std::vector<std::size_t> order{start};
    std::vector<bool> seen(records.size(), false);
    seen[start] = true;
    while (true) {
        const auto& next = adjacent[order.back()];
        const auto it = std::find_if(next.begin(), next.end(), [&](std::size_t j) { return !seen[j]; });
        if (it == next.end()) break;
        seen[*it] = true;
        order.push_back(*it);
    }
    if (order.size() != records.size()) throw StructureError("chain: parent links are broken");
    if (records[order.front()].f[0] > records[order.back()].f[0]) std::reverse(order.begin(), order.end());

    FrontParametrization p;
    p.kind = ParametrizationKind::chain;
    std::vector<double> arc{0.0};
    for (std::size_t i : order) {
        if (!p.fs.empty()) arc.push_back(arc.back() + (records[i].f - p.fs.back()).norm());
        p.ids.push_back(records[i].id);
        p.xs.push_back(records[i].x);
        p.fs.push_back(records[i].f);
    }
    if (order.size() == 1) {
        p.knots = {0.0};
        return p;
    }
    for (std::size_t i = 1; i < arc.size(); ++i) {
        if (!(arc[i] > arc[i - 1])) throw StructureError("chain: consecutive records share objective values");
    }
    for (double a : arc) p.knots.push_back(-1.0 + 2.0 * a / arc.back());
    p.knots.back() = 1.0;
    return p;
}

FrontParametrization build_patch(const ParetoRecord& center, const std::vector<ParetoRecord>& children) {
    FrontParametrization p;
    p.kind = ParametrizationKind::patch;
    p.ids.push_back(center.id);
    p.xs.push_back(center.x);
    p.fs.push_back(center.f);
    for (const auto& child : children) {
        if (!child.parent_id || *child.parent_id != center.id) {
            throw StructureError("patch: record " + std::to_string(child.id) + " is not a child of the center");
        }
        if (child.x.size() != center.x.size()) throw DimensionError("patch: parameter length mismatch");
        p.ids.push_back(child.id);
        p.xs.push_back(child.x);
        p.fs.push_back(child.f);
    }
    return p;
}

ParamVector sample_parametrization(const FrontParametrization& p, double t) {
    if (p.kind != ParametrizationKind::chain) throw DomainError("sample: a patch takes simplex weights");
    if (!std::isfinite(t) || t < p.knots.front() || t > p.knots.back()) {
        throw DomainError("sample: t outside the chain domain");
    }
    if (p.xs.size() == 1) return p.xs.front();
    const auto upper = std::upper_bound(p.knots.begin(), p.knots.end(), t);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(upper - p.knots.begin()) - 1, p.knots.size() - 2);
    if (t == p.knots[i]) return p.xs[i];
    if (t == p.knots[i + 1]) return p.xs[i + 1];
    const double w = (t - p.knots[i]) / (p.knots[i + 1] - p.knots[i]);
    return (1.0 - w) * p.xs[i] + w * p.xs[i + 1];
}

ParamVector sample_parametrization(const FrontParametrization& p, const Eigen::VectorXd& r) {
    if (p.kind != ParametrizationKind::patch) throw DomainError("sample: a chain takes a scalar t");
    if (static_cast<std::size_t>(r.size()) + 1 != p.xs.size()) throw DimensionError("sample: one weight per child");
    if (!r.allFinite() || (r.size() > 0 && r.minCoeff() < 0.0) || r.sum() > 1.0 + 1e-12) {
        throw DomainError("sample: weights must satisfy r >= 0 and sum r <= 1");
    }
    ParamVector x = p.xs.front();
    for (Eigen::Index j = 0; j < r.size(); ++j) {
        if (r[j] != 0.0) x += r[j] * (p.xs[static_cast<std::size_t>(j) + 1] - p.xs.front());
    }
    return x;
}

double StitchedFront::retained_measure(std::size_t segment) const {
    const auto& row = samples.at(segment);
    if (row.size() < 2) return 0.0;
    const double spacing = (row.back().t - row.front().t) / static_cast<double>(row.size() - 1);
    return spacing * static_cast<double>(std::count_if(row.begin(), row.end(), [](const FrontSample& s) {
               return s.retained;
           }));
}

StitchedFront stitch_fronts(Problem& problem, const std::vector<FrontParametrization>& fronts, int grid) {
    if (grid < 2) throw ConfigError("stitch: grid must have at least two points");
    StitchedFront out;
    out.segments = fronts;
    for (const auto& front : fronts) {
        if (front.kind != ParametrizationKind::chain) throw CapabilityError("stitch: only chains can be stitched");
        std::vector<FrontSample> row;
        row.reserve(static_cast<std::size_t>(grid));
        for (int j = 0; j < grid; ++j) {
            const double t = front.knots.size() == 1 ? 0.0 : -1.0 + 2.0 * j / (grid - 1);
            row.push_back({t, problem.evaluate(sample_parametrization(front, t)), true});
        }
        out.samples.push_back(std::move(row));
    }

    std::vector<std::vector<std::size_t>> dominator(fronts.size());
    for (std::size_t a = 0; a < fronts.size(); ++a) {
        dominator[a].assign(out.samples[a].size(), fronts.size());
        for (std::size_t j = 0; j < out.samples[a].size(); ++j) {
            const auto& f = out.samples[a][j].f;
            for (std::size_t b = 0; b < fronts.size() && dominator[a][j] == fronts.size(); ++b) {
                for (const auto& other : out.samples[b]) {
                    if (dominates(other.f, f)) {
                        dominator[a][j] = b;
                        break;
                    }
                }
            }
            out.samples[a][j].retained = dominator[a][j] == fronts.size();
        }
    }

    for (std::size_t a = 0; a < fronts.size(); ++a) {
        const auto& row = out.samples[a];
        for (std::size_t j = 0; j < row.size();) {
            if (row[j].retained) {
                ++j;
                continue;
            }
            std::size_t end = j;
            while (end + 1 < row.size() && !row[end + 1].retained) ++end;
            const std::size_t by = dominator[a][j];
            out.crop_log.push_back({a, row[j].t, row[end].t, by});
            if (by != a) {
                if (j > 0) out.stitch_points.push_back({a, row[j - 1].t});
                if (end + 1 < row.size()) out.stitch_points.push_back({a, row[end + 1].t});
            }
            j = end + 1;
        }
    }
    return out;
}

} // namespace pareto
