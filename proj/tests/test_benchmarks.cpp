#include <doctest.h>

#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "pareto/benchmarks.hpp"

using namespace pareto;

namespace {

double zdt2_f(int i, const Eigen::VectorXd& x) { return zdt2_eval(x)[i]; }

} // namespace

TEST_CASE("zdt2 values follow the closed form") {
    const Eigen::Vector3d x(0.3, 0.7, -1.1);
    const double r = 0.49 + 1.21;
    const double y1 = (std::sin(0.3 + r) + 1) / 2;
    const double g = 1 + 9 * (std::cos(r) + 1) / 2;
    const auto f = zdt2_eval(x);
    CHECK(f[0] == doctest::Approx(y1).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(g - y1 * y1 / g).epsilon(1e-14));
}

TEST_CASE("zdt2 gradients and Hessians match finite differences") {
    Zdt2Variant p;
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const ParamVector x = rng.normal_vector(3);
        const auto G = p.gradients(x);
        const auto [h1, h2] = zdt2_hessians(x);
        for (int i = 0; i < 2; ++i) {
            const auto fd = oracle::central_difference([&](const Eigen::VectorXd& z) { return zdt2_f(i, z); }, x);
            CHECK((G.row(i).transpose() - fd).norm() <= 1e-7 * (1 + fd.norm()));
        }
        Eigen::Matrix3d fd1, fd2;
        for (int j = 0; j < 3; ++j) {
            const double h = 1e-6;
            ParamVector xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const GradientMatrix d = (p.gradients(xp) - p.gradients(xm)) / (2 * h);
            fd1.col(j) = d.row(0).transpose();
            fd2.col(j) = d.row(1).transpose();
        }
        CHECK((h1 - fd1).norm() <= 1e-6 * (1 + h1.norm()));
        CHECK((h2 - fd2).norm() <= 1e-6 * (1 + h2.norm()));
        const Eigen::Vector2d a(0.3, 0.7);
        const ParamVector v = rng.normal_vector(3);
        CHECK(p.hvp(x, a, v).isApprox(0.3 * h1 * v + 0.7 * h2 * v, 1e-12));
    }
}

TEST_CASE("zdt2 Pareto points sit on the front and the innermost cylinder") {
    for (double f1 : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (double theta : {0.0, 1.0, 4.0}) {
            const auto x = Zdt2Variant::pareto_point(f1, theta);
            const auto f = zdt2_eval(x);
            CHECK(f[0] == doctest::Approx(f1).epsilon(1e-12));
            CHECK(zdt2_front_residual(f) <= 1e-12);
            CHECK(zdt2_set_residual(x) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(Zdt2Variant::pareto_point(1.5, 0.0), DomainError);
}

TEST_CASE("zdt2 residual helpers") {
    CHECK(std::isinf(zdt2_front_residual(Eigen::Vector2d(-0.1, 1.0))));
    CHECK(zdt2_front_residual(Eigen::Vector2d(0.5, 0.8)) == doctest::Approx(0.05));
    // radius^2 = 3 pi lies on the second cylinder
    const double rad = std::sqrt(3 * std::numbers::pi);
    const Eigen::Vector3d x(0.0, rad, 0.0);
    CHECK(zdt2_set_residual(x, Cylinder::nearest) <= 1e-12);
    CHECK(zdt2_set_residual(x, Cylinder::innermost) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("two quadratics geometry") {
    TwoQuadratics p(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    CHECK(p.set_residual(Eigen::Vector2d(0.5, 0.0)) == 0.0);
    CHECK(p.set_residual(Eigen::Vector2d(2.0, 0.0)) == doctest::Approx(1.0));
    CHECK(p.set_residual(Eigen::Vector2d(0.5, -0.3)) == doctest::Approx(0.3));
    CHECK(p.front_residual(p.evaluate(Eigen::Vector2d(0.25, 0.0))) <= 1e-15);
    CHECK(p.hvp(Eigen::Vector2d(1, 1), Eigen::Vector2d(0.2, 0.8), Eigen::Vector2d(1, 2)).isApprox(Eigen::Vector2d(2, 4)));
}

TEST_CASE("rank deficient quadratic has a two-dimensional null space") {
    RankDeficientQuadratic p;
    const ParamVector x = Eigen::Vector3d(0.3, 1.0, -2.0);
    CHECK(p.hvp(x, Eigen::Vector2d(0.5, 0.5), Eigen::Vector3d(0, 1, 1)).norm() == 0.0);
    CHECK(p.hvp(x, Eigen::Vector2d(0.5, 0.5), Eigen::Vector3d(1, 0, 0))[0] == 2.0);
    const auto G = p.gradients(x);
    CHECK(G(0, 0) == doctest::Approx(-1.4));
    CHECK(G(1, 0) == doctest::Approx(2.6));
}

TEST_CASE("blobs dataset is balanced with roughly 10% flipped labels") {
    const auto data = make_blobs(11, 4000);
    CHECK(data.features.rows() == 4000);
    int flips1 = 0, flips2 = 0;
    for (Eigen::Index i = 0; i < 4000; ++i) {
        const int sx = (i % 4) & 1 ? 1 : 0;
        const int sy = (i % 4) & 2 ? 1 : 0;
        flips1 += data.task1[i] != sx;
        flips2 += data.task2[i] != sy;
    }
    CHECK(flips1 / 4000.0 == doctest::Approx(0.1).epsilon(0.25));
    CHECK(flips2 / 4000.0 == doctest::Approx(0.1).epsilon(0.25));
    std::ostringstream out;
    write_dataset_csv(out, make_blobs(1, 3));
    CHECK(out.str().rfind("feature1,feature2,label_task1,label_task2\n", 0) == 0);
}

TEST_CASE("toy MLP is seeded and validated") {
    auto a = toy_mlp_build(5), b = toy_mlp_build(5);
    CHECK(a->dim() == 2 * 8 + 8 + 2 * (8 * 2 + 2));
    CHECK(a->initial_point() == b->initial_point());
    CHECK(a->evaluate(a->initial_point()) == b->evaluate(b->initial_point()));
    CHECK_THROWS_AS(toy_mlp_build(0, {2, 0, 2}), ConfigError);
    CHECK_THROWS_AS(toy_mlp_build(0, {3, 8, 2}), ConfigError);
}

TEST_CASE("toy MLP gradients match finite differences") {
    auto p = toy_mlp_build(2);
    const ParamVector x = p->initial_point();
    const auto G = p->gradients(x);
    for (int i = 0; i < 2; ++i) {
        auto q = toy_mlp_build(2);
        const auto fd = oracle::central_difference([&](const Eigen::VectorXd& z) { return q->evaluate(z)[i]; }, x);
        CHECK((G.row(i).transpose() - fd).norm() <= 1e-6 * (1 + fd.norm()));
    }
}

TEST_CASE("benchmark registry") {
    for (const auto& id : benchmark_ids()) {
        auto p = make_benchmark(id, 0);
        CHECK(p->name() == id);
        Rng rng(1);
        CHECK(static_cast<std::size_t>(benchmark_start(id, *p, rng).size()) == p->dim());
        CHECK(static_cast<std::size_t>(default_reference(id).size()) == p->num_objectives());
    }
    CHECK_THROWS_AS(make_benchmark("nope", 0), ConfigError);
    CHECK(default_reference("zdt2").isApprox(Eigen::Vector2d(1.1, 11.0)));
    CHECK(default_reference("toy-mlp")[0] == doctest::Approx(std::log(2.0) * 1.1));
}
