#include <doctest.h>

#include "oracles.hpp"
#include "pareto/autodiff.hpp"
#include "pareto/benchmarks.hpp"

using namespace pareto;
using autodiff::Tape;

namespace {

// One affine layer + softmax cross-entropy on three samples.
Tape small_tape() {
    Eigen::MatrixXd features(3, 2);
    features << 0.5, -1.0, 1.5, 0.2, -0.3, 0.8;
    Tape t;
    int node = t.input(features);
    node = t.affine(node, 3, "hidden");
    node = t.tanh(node);
    const int trunk = node;
    t.mark_output(t.mean(t.softmax_xent(t.affine(trunk, 2, "a"), {0, 1, 1})));
    t.mark_output(t.mean(t.softmax_xent(t.affine(trunk, 2, "b"), {1, 1, 0})));
    return t;
}

} // namespace

TEST_CASE("tape layout and locate") {
    Tape t = small_tape();
    CHECK(t.param_count() == 2 * 3 + 3 + 2 * (3 * 2 + 2));
    CHECK(t.layout().front().name == "hidden.weight");
    CHECK(t.layout().front().rows == 3);
    CHECK(t.layout().front().cols == 2);
    const auto [block, offset] = t.locate(7);
    CHECK(t.layout()[block].name == "hidden.bias");
    CHECK(offset == 1);
}

TEST_CASE("tape construction errors") {
    Tape t;
    CHECK_THROWS(t.affine(0, 2, "x"));
    const int in = t.input(Eigen::MatrixXd::Ones(2, 2));
    CHECK_THROWS_AS(t.affine(in, 0, "zero"), ConfigError);
}

TEST_CASE("tape forward matches a hand computation") {
    Eigen::MatrixXd features(1, 1);
    features << 2.0;
    Tape t;
    const int logits = t.affine(t.input(features), 2, "w");
    t.mark_output(t.mean(t.softmax_xent(logits, {0})));
    // weights (1, -1), biases (0, 0.5): logits (2, -1.5)
    const ParamVector x = (ParamVector(4) << 1.0, -1.0, 0.0, 0.5).finished();
    const double expected = -2.0 + std::log(std::exp(2.0) + std::exp(-1.5));
    CHECK(t.forward(x)[0] == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("tape gradients match finite differences and are task-local on heads") {
    Tape t = small_tape();
    Rng rng(4);
    const ParamVector x = rng.normal_vector(static_cast<Eigen::Index>(t.param_count()));
    const auto G = t.gradients(x);
    for (int i = 0; i < 2; ++i) {
        Tape probe = small_tape();
        const auto fd = oracle::central_difference([&](const Eigen::VectorXd& z) { return probe.forward(z)[i]; }, x);
        CHECK((G.row(i).transpose() - fd).norm() <= 1e-7 * (1 + fd.norm()));
    }
    // head "b" parameters do not affect task 0
    const auto& b_weight = t.layout()[4];
    CHECK(b_weight.name == "b.weight");
    for (std::size_t j = 0; j < b_weight.size(); ++j) CHECK(G(0, static_cast<Eigen::Index>(b_weight.offset + j)) == 0.0);
}

TEST_CASE("tape HVP matches finite differences of gradients and is symmetric") {
    Tape t = small_tape();
    Rng rng(9);
    const auto n = static_cast<Eigen::Index>(t.param_count());
    const ParamVector x = rng.normal_vector(n);
    const Eigen::Vector2d alpha(0.35, 0.65);
    for (int trial = 0; trial < 5; ++trial) {
        const ParamVector v = rng.normal_vector(n);
        const ParamVector w = rng.normal_vector(n);
        const ParamVector hv = t.hvp(x, alpha, v);
        const double h = 1e-5;
        const ParamVector fd = ((t.gradients(x + h * v) - t.gradients(x - h * v)).transpose() * alpha) / (2 * h);
        CHECK((hv - fd).norm() <= 1e-6 * (1 + fd.norm()));
        CHECK(std::abs(w.dot(t.hvp(x, alpha, v)) - v.dot(t.hvp(x, alpha, w))) <= 1e-10 * (1 + hv.norm()));
    }
}

TEST_CASE("an HVP is one augmented sweep") {
    Tape t = small_tape();
    const ParamVector x = ParamVector::Constant(static_cast<Eigen::Index>(t.param_count()), 0.1);
    const auto before = t.sweeps();
    t.hvp(x, Eigen::Vector2d(0.5, 0.5), x);
    CHECK(t.sweeps().augmented == before.augmented + 1);
    CHECK(t.sweeps().reverse == before.reverse);
}

TEST_CASE("tape rejects bad parameters and overflow") {
    Tape t = small_tape();
    CHECK_THROWS_AS(t.forward(ParamVector::Zero(3)), DimensionError);
    ParamVector x = ParamVector::Zero(static_cast<Eigen::Index>(t.param_count()));
    x[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(t.forward(x));
    x.setConstant(1e308);
    CHECK_THROWS_AS(t.forward(x), NumericError);
}
