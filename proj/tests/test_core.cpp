#include <doctest.h>

#include "oracles.hpp"
#include "pareto/benchmarks.hpp"
#include "pareto/core.hpp"
#include "pareto/random.hpp"

using namespace pareto;

namespace {
ObjectiveValues v2(double a, double b) { return (ObjectiveValues(2) << a, b).finished(); }
}

TEST_CASE("dominates is strict Pareto dominance") {
    CHECK(dominates(v2(1, 2), v2(2, 3)));
    CHECK(dominates(v2(1, 2), v2(1, 3)));
    CHECK_FALSE(dominates(v2(1, 2), v2(1, 2)));
    CHECK_FALSE(dominates(v2(1, 3), v2(2, 2)));
    CHECK_THROWS_AS(dominates(v2(1, 2), ObjectiveValues::Zero(3)), DimensionError);
}

TEST_CASE("nondominated_filter matches the all-pairs oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ObjectiveValues> pts;
        const auto count = 1 + rng.index(30);
        for (std::size_t i = 0; i < count; ++i) {
            // coarse grid so ties and duplicates show up
            ObjectiveValues p(2 + trial % 2);
            for (Eigen::Index d = 0; d < p.size(); ++d) p[d] = std::round(rng.uniform(0, 5));
            pts.push_back(p);
        }
        CHECK(nondominated_filter(pts) == oracle::nondominated_indices(pts));
    }
}

TEST_CASE("nondominated_filter edge cases") {
    CHECK(nondominated_filter(std::vector<ObjectiveValues>{}).empty());
    std::vector<ObjectiveValues> dup{v2(1, 1), v2(1, 1)};
    CHECK(nondominated_filter(dup).size() == 2);
    std::vector<ObjectiveValues> chain{v2(3, 3), v2(2, 2), v2(1, 1)};
    CHECK(nondominated_filter(chain) == std::vector<std::size_t>{2});
}

TEST_CASE("cost counters add and subtract componentwise") {
    CostCounters a{1, 2, 3}, b{10, 20, 30};
    CHECK(a + b == CostCounters{11, 22, 33});
    CHECK((a + b).since(a) == b);
}

TEST_CASE("problem oracle meters every call") {
    TwoQuadratics p(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    const ParamVector x = ParamVector::Constant(2, 0.3);
    p.evaluate(x);
    p.gradients(x);
    p.hvp(x, Eigen::Vector2d(0.5, 0.5), x);
    CHECK(p.counters() == CostCounters{1, 1, 2});
    p.reset_counters();
    CHECK(p.counters() == CostCounters{});
}

TEST_CASE("problem oracle validates inputs") {
    TwoQuadratics p(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    CHECK_THROWS_AS(p.evaluate(ParamVector::Zero(3)), DimensionError);
    const ParamVector x = ParamVector::Zero(2);
    CHECK_THROWS_AS(p.hvp(x, Eigen::Vector2d(0.7, 0.7), x), DomainError);
    CHECK_THROWS_AS(p.hvp(x, Eigen::Vector3d(0.5, 0.5, 0.0), x), DimensionError);
    CHECK_THROWS_AS(p.hvp(x, Eigen::Vector2d(1.5, -0.5), x), DomainError);
    CHECK(p.counters() == CostCounters{});
}

TEST_CASE("stage names round trip") {
    for (Stage s : {Stage::seed, Stage::optimized, Stage::expanded}) CHECK(stage_from_string(to_string(s)) == s);
    CHECK_THROWS(stage_from_string("bogus"));
}

TEST_CASE("gradients_of reuses stored gradients") {
    TwoQuadratics p(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    ParetoRecord r;
    r.x = ParamVector::Constant(2, 0.25);
    CHECK(gradients_of(r, p).isApprox(p.gradients(r.x)));
    CHECK(p.counters().n_grad == 2);
    r.grads = p.gradients(r.x);
    p.reset_counters();
    gradients_of(r, p);
    CHECK(p.counters().n_grad == 0);
}

TEST_CASE("rng streams are deterministic and independent") {
    Rng a(42), b(42);
    CHECK(a.normal() == b.normal());
    Rng c = Rng(42).split(1), d = Rng(42).split(2);
    CHECK(c.normal() != d.normal());
    CHECK(Rng(42).split(1).normal() == Rng(42).split(1).normal());
}
