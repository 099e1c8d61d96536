#include <doctest.h>

#include "oracles.hpp"
#include "pareto/random.hpp"
#include "pareto/simplex.hpp"

using namespace pareto;

TEST_CASE("two-objective closed form") {
    SUBCASE("opposed gradients cancel") {
        GradientMatrix G(2, 2);
        G << 1, 0, -1, 0;
        const auto r = min_norm_alpha(G);
        CHECK(r.alpha.isApprox(Eigen::Vector2d(0.5, 0.5)));
        CHECK(r.min_norm_value <= 1e-15);
    }
    SUBCASE("orthogonal unit gradients") {
        GradientMatrix G(2, 2);
        G << 1, 0, 0, 1;
        const auto r = min_norm_alpha(G);
        CHECK(r.alpha.isApprox(Eigen::Vector2d(0.5, 0.5)));
        CHECK(r.min_norm_value == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("clipped to a vertex") {
        GradientMatrix G(2, 2);
        G << 1, 0, 3, 0;
        const auto r = min_norm_alpha(G);
        CHECK(r.alpha.isApprox(Eigen::Vector2d(1, 0)));
        CHECK(r.min_norm_value == doctest::Approx(1.0));
    }
    SUBCASE("identical and zero gradients give uniform weights") {
        CHECK(min_norm_alpha(GradientMatrix::Ones(2, 3)).alpha.isApprox(Eigen::Vector2d(0.5, 0.5)));
        CHECK(min_norm_alpha(GradientMatrix::Zero(3, 3)).alpha.isApprox(Eigen::Vector3d::Constant(1.0 / 3)));
    }
}

TEST_CASE("min-norm agrees with the support-enumeration QP oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index m = 2 + trial % 4;
        const Eigen::Index n = trial % 3 == 0 ? 2 : 6;  // n < m gives degenerate Gram matrices
        GradientMatrix G(m, n);
        for (Eigen::Index i = 0; i < m; ++i) G.row(i) = rng.normal_vector(n).transpose();
        const auto r = min_norm_alpha(G);
        const auto ref = oracle::simplex_qp_by_supports(G * G.transpose());
        CHECK(r.alpha.minCoeff() >= 0.0);
        CHECK(r.alpha.sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.min_norm_value * r.min_norm_value == doctest::Approx(ref.value).epsilon(1e-8).scale(1.0));
        CHECK((G.transpose() * r.alpha - r.combined).norm() <= 1e-14);
    }
}

TEST_CASE("corrected alpha is the min-norm combination") {
    Rng rng(5);
    GradientMatrix G(3, 4);
    for (int i = 0; i < 3; ++i) G.row(i) = rng.normal_vector(4).transpose();
    const auto c = corrected_alpha(G);
    const auto a = min_norm_alpha(G);
    CHECK(c.alpha == a.alpha);
    CHECK((c.c - G.transpose() * a.alpha).norm() <= 1e-14);
    // shifted gradients are exactly stationary
    const GradientMatrix shifted = G.rowwise() - c.c.transpose();
    CHECK((shifted.transpose() * c.alpha).norm() <= 1e-12);
}

TEST_CASE("min-norm input validation") {
    CHECK_THROWS_AS(min_norm_alpha(GradientMatrix::Ones(1, 3)), DimensionError);
    CHECK_THROWS_AS(min_norm_alpha(GradientMatrix::Ones(2, 0)), DimensionError);
    GradientMatrix bad = GradientMatrix::Ones(2, 2);
    bad(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(min_norm_alpha(bad), DimensionError);
}

TEST_CASE("stationarity residual") {
    GradientMatrix G(2, 1);
    G << 2, -1;
    CHECK(stationarity_residual(G) <= 1e-15);
    G << 2, 1;
    CHECK(stationarity_residual(G) == doctest::Approx(1.0));
}
