#include <doctest.h>

#include "oracles.hpp"
#include "pareto/benchmarks.hpp"
#include "pareto/parametrization.hpp"

using namespace pareto;

namespace {

ParetoRecord rec(std::int64_t id, std::optional<std::int64_t> parent, ParamVector x, ObjectiveValues f) {
    ParetoRecord r;
    r.id = id;
    r.parent_id = parent;
    r.x = std::move(x);
    r.f = std::move(f);
    return r;
}

// Chain along the segment (x, y) for x in xs, with two-quadratics objectives.
std::vector<ParetoRecord> line_chain(TwoQuadratics& p, const std::vector<double>& xs, double y) {
    std::vector<ParetoRecord> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ParamVector x = Eigen::Vector2d(xs[i], y);
        std::optional<std::int64_t> parent;
        if (i > 0) parent = static_cast<std::int64_t>(i - 1);
        out.push_back(rec(static_cast<std::int64_t>(i), parent, x, p.evaluate(x)));
    }
    return out;
}

} // namespace

TEST_CASE("chain knots follow objective-space arc length") {
    std::vector<ParetoRecord> r{rec(0, std::nullopt, Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)),
                                rec(1, 0, Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 2)),
                                rec(2, 0, Eigen::Vector2d(3, 0), Eigen::Vector2d(3, -1))};
    const auto p = build_chain(r);
    REQUIRE(p.knots.size() == 3);
    CHECK(p.ids == std::vector<std::int64_t>{1, 0, 2});
    CHECK(p.knots[0] == -1.0);
    CHECK(p.knots[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(p.knots[2] == 1.0);
}

TEST_CASE("chain orientation puts small f1 first") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto p = build_chain(line_chain(q, {0.9, 0.6, 0.3}, 0.0));
    CHECK(p.fs.front()[0] < p.fs.back()[0]);
    CHECK(p.ids.front() == 2);
}

TEST_CASE("single-record chain") {
    const auto p = build_chain({rec(5, std::nullopt, Eigen::Vector2d(1, 2), Eigen::Vector2d(0, 0))});
    CHECK(p.knots == std::vector<double>{0.0});
    CHECK(sample_parametrization(p, 0.0) == Eigen::Vector2d(1, 2));
    CHECK_THROWS_AS(sample_parametrization(p, 0.5), DomainError);
}

TEST_CASE("chain structure errors") {
    const ParamVector x = Eigen::Vector2d(0, 0);
    CHECK_THROWS_AS(build_chain({}), StructureError);
    // two roots
    CHECK_THROWS_AS(build_chain({rec(0, std::nullopt, x, Eigen::Vector2d(0, 1)),
                                 rec(1, std::nullopt, x, Eigen::Vector2d(1, 0))}),
                    StructureError);
    // branching
    CHECK_THROWS_AS(build_chain({rec(0, std::nullopt, x, Eigen::Vector2d(0, 3)), rec(1, 0, x, Eigen::Vector2d(1, 2)),
                                 rec(2, 0, x, Eigen::Vector2d(2, 1)), rec(3, 0, x, Eigen::Vector2d(3, 0))}),
                    StructureError);
    CHECK_THROWS_AS(build_chain({rec(0, std::nullopt, x, Eigen::Vector3d(0, 1, 2))}), DimensionError);
}

TEST_CASE("chain sampling interpolates linearly") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto p = build_chain(line_chain(q, {0.1, 0.4, 0.5}, 0.2));
    for (std::size_t i = 0; i < p.knots.size(); ++i) CHECK(sample_parametrization(p, p.knots[i]) == p.xs[i]);
    const double mid = 0.5 * (p.knots[0] + p.knots[1]);
    CHECK(sample_parametrization(p, mid).isApprox(0.5 * (p.xs[0] + p.xs[1])));
    CHECK_THROWS_AS(sample_parametrization(p, 1.5), DomainError);
    CHECK_THROWS_AS(sample_parametrization(p, Eigen::VectorXd::Zero(2)), DomainError);
}

TEST_CASE("patch sampling") {
    const ParetoRecord center = rec(0, std::nullopt, Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0));
    const std::vector<ParetoRecord> kids{rec(1, 0, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 0)),
                                         rec(2, 0, Eigen::Vector2d(0, 2), Eigen::Vector2d(0, 0))};
    const auto p = build_patch(center, kids);
    CHECK(sample_parametrization(p, Eigen::Vector2d(0, 0)) == center.x);
    CHECK(sample_parametrization(p, Eigen::Vector2d(0, 1)) == kids[1].x);
    CHECK(sample_parametrization(p, Eigen::Vector2d(0.5, 0.25)).isApprox(Eigen::Vector2d(0.5, 0.5)));
    CHECK_THROWS_AS(sample_parametrization(p, Eigen::Vector2d(0.7, 0.7)), DomainError);
    CHECK_THROWS_AS(sample_parametrization(p, Eigen::Vector2d(-0.1, 0.1)), DomainError);
    CHECK_THROWS_AS(sample_parametrization(p, 0.0), DomainError);
    CHECK_THROWS_AS(build_patch(center, {rec(3, 7, Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0))}), StructureError);
}

TEST_CASE("stitching a single on-front chain crops nothing") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto chain = build_chain(line_chain(q, {0.1, 0.3, 0.8}, 0.0));
    const auto s = stitch_fronts(q, {chain});
    REQUIRE(s.samples.size() == 1);
    CHECK(s.samples[0].size() == 201);
    CHECK(s.crop_log.empty());
    CHECK(s.stitch_points.empty());
    CHECK(s.retained_measure(0) == doctest::Approx(2.0 * 201 / 200));
}

TEST_CASE("disjoint fronts are both retained") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto a = build_chain(line_chain(q, {0.0, 0.2}, 0.0));
    const auto b = build_chain(line_chain(q, {0.7, 1.0}, 0.0));
    const auto s = stitch_fronts(q, {a, b}, 51);
    CHECK(s.crop_log.empty());
    CHECK(s.stitch_points.empty());
}

TEST_CASE("overlapping fronts are cropped into a non-dominated union") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto a = build_chain(line_chain(q, {0.0, 0.25, 0.5}, 0.0));
    const auto b = build_chain(line_chain(q, {0.3, 0.6, 1.0}, 0.1));
    const auto s = stitch_fronts(q, {a, b});
    CHECK_FALSE(s.crop_log.empty());
    CHECK_FALSE(s.stitch_points.empty());
    std::vector<Eigen::VectorXd> kept;
    for (const auto& row : s.samples) {
        for (const auto& sample : row) {
            if (sample.retained) kept.push_back(sample.f);
        }
    }
    CHECK(oracle::nondominated_indices(kept).size() == kept.size());
    CHECK(s.retained_measure(0) + s.retained_measure(1) < 2 * 2.0 * 201 / 200);
    CHECK(s.retained_measure(0) == doctest::Approx(2.0 * 201 / 200));
}

TEST_CASE("stitch argument checks") {
    TwoQuadratics q(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const auto chain = build_chain(line_chain(q, {0.1, 0.3}, 0.0));
    CHECK_THROWS_AS(stitch_fronts(q, {chain}, 1), ConfigError);
    const auto patch = build_patch(rec(0, std::nullopt, Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 1)), {});
    CHECK_THROWS_AS(stitch_fronts(q, {patch}), CapabilityError);
    CHECK(stitch_fronts(q, {}).samples.empty());
}
