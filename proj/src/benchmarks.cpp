#include "pareto/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace pareto {

namespace {

constexpr double kPi = std::numbers::pi;

struct Zdt2Terms {
    double y1, dy1, d2y1;  // derivatives w.r.t. u = x1 + r
    double g, dg, d2g;     // derivatives w.r.t. r = x2^2 + x3^2
    Eigen::Vector3d grad_u, grad_r;
};

Zdt2Terms zdt2_terms(const ParamVector& x) {
    const double r = x[1] * x[1] + x[2] * x[2];
    const double u = x[0] + r;
    Zdt2Terms t;
    t.y1 = (std::sin(u) + 1.0) / 2.0;
    t.dy1 = std::cos(u) / 2.0;
    t.d2y1 = -std::sin(u) / 2.0;
    const double y2 = (std::cos(r) + 1.0) / 2.0;
    t.g = 1.0 + 4.5 * (y2 + y2);
    t.dg = -9.0 * std::sin(r) / 2.0;
    t.d2g = -9.0 * std::cos(r) / 2.0;
    t.grad_u = Eigen::Vector3d(1.0, 2.0 * x[1], 2.0 * x[2]);
    t.grad_r = Eigen::Vector3d(0.0, 2.0 * x[1], 2.0 * x[2]);
    return t;
}

} // namespace

ObjectiveValues zdt2_eval(const ParamVector& x) {
    if (x.size() != 3) throw DimensionError("zdt2: expected 3 parameters");
    const auto t = zdt2_terms(x);
    ObjectiveValues f(2);
    f << t.y1, t.g - t.y1 * t.y1 / t.g;
    return f;
}

double zdt2_front_residual(const ObjectiveValues& f) {
    if (f.size() != 2) throw DimensionError("zdt2: front residual needs two objectives");
    if (!(f[0] >= 0.0 && f[0] <= 1.0)) return std::numeric_limits<double>::infinity();
    return std::abs(f[1] - (1.0 - f[0] * f[0]));
}

double zdt2_set_residual(const ParamVector& x, Cylinder which) {
    if (x.size() != 3) throw DimensionError("zdt2: expected 3 parameters");
    const double r = x[1] * x[1] + x[2] * x[2];
    if (which == Cylinder::innermost) return std::abs(r - kPi);
    const double k = std::max(0.0, std::floor((r / kPi - 1.0) / 2.0));
    return std::min(std::abs(r - (2.0 * k + 1.0) * kPi), std::abs(r - (2.0 * k + 3.0) * kPi));
}

std::pair<Eigen::Matrix3d, Eigen::Matrix3d> zdt2_hessians(const ParamVector& x) {
    const auto t = zdt2_terms(x);
    const Eigen::Matrix3d uu = t.grad_u * t.grad_u.transpose();
    const Eigen::Matrix3d ur = t.grad_u * t.grad_r.transpose() + t.grad_r * t.grad_u.transpose();
    const Eigen::Matrix3d rr = t.grad_r * t.grad_r.transpose();
    const Eigen::Matrix3d curv = Eigen::Vector3d(0.0, 2.0, 2.0).asDiagonal();

    // f1 depends on u only.
    const Eigen::Matrix3d h1 = t.d2y1 * uu + t.dy1 * curv;

    // f2 = g(r) - y1(u)^2 / g(r)
    const double g2 = t.g * t.g;
    const double f_u = -2.0 * t.y1 * t.dy1 / t.g;
    const double f_uu = -2.0 * (t.dy1 * t.dy1 + t.y1 * t.d2y1) / t.g;
    const double f_ur = 2.0 * t.y1 * t.dy1 * t.dg / g2;
    const double f_r = t.dg + t.y1 * t.y1 * t.dg / g2;
    const double f_rr = t.d2g + t.y1 * t.y1 * (t.d2g / g2 - 2.0 * t.dg * t.dg / (g2 * t.g));
    const Eigen::Matrix3d h2 = f_uu * uu + f_ur * ur + f_rr * rr + (f_u + f_r) * curv;
    return {h1, h2};
}

ParamVector Zdt2Variant::pareto_point(double f1, double theta) {
    if (f1 < 0.0 || f1 > 1.0) throw DomainError("zdt2: f1 must lie in [0, 1]");
    ParamVector x(3);
    x << std::asin(2.0 * f1 - 1.0) - kPi, std::sqrt(kPi) * std::cos(theta), std::sqrt(kPi) * std::sin(theta);
    return x;
}

ObjectiveValues Zdt2Variant::do_evaluate(const ParamVector& x) { return zdt2_eval(x); }

GradientMatrix Zdt2Variant::do_gradients(const ParamVector& x) {
    const auto t = zdt2_terms(x);
    GradientMatrix G(2, 3);
    G.row(0) = (t.dy1 * t.grad_u).transpose();
    const double f_u = -2.0 * t.y1 * t.dy1 / t.g;
    const double f_r = t.dg + t.y1 * t.y1 * t.dg / (t.g * t.g);
    G.row(1) = (f_u * t.grad_u + f_r * t.grad_r).transpose();
    return G;
}

ParamVector Zdt2Variant::do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) {
    const auto [h1, h2] = zdt2_hessians(x);
    return alpha[0] * (h1 * v) + alpha[1] * (h2 * v);
}

// ---------------------------------------------------------------------------

TwoQuadratics::TwoQuadratics(ParamVector a, ParamVector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size() || a_.size() == 0) throw DimensionError("two-quadratics: centers differ in length");
    require_finite(a_, "two-quadratics center a");
    require_finite(b_, "two-quadratics center b");
}

double TwoQuadratics::set_residual(const ParamVector& x) const {
    const ParamVector d = b_ - a_;
    const double len2 = d.squaredNorm();
    const double lambda = len2 > 0.0 ? std::clamp((x - a_).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (x - (a_ + lambda * d)).norm();
}

double TwoQuadratics::front_residual(const ObjectiveValues& f) const {
    return std::abs(std::sqrt(std::max(0.0, f[0])) + std::sqrt(std::max(0.0, f[1])) - (b_ - a_).norm());
}

ObjectiveValues TwoQuadratics::do_evaluate(const ParamVector& x) {
    ObjectiveValues f(2);
    f << (x - a_).squaredNorm(), (x - b_).squaredNorm();
    return f;
}

GradientMatrix TwoQuadratics::do_gradients(const ParamVector& x) {
    GradientMatrix G(2, x.size());
    G.row(0) = (2.0 * (x - a_)).transpose();
    G.row(1) = (2.0 * (x - b_)).transpose();
    return G;
}

ParamVector TwoQuadratics::do_hvp(const ParamVector&, const Eigen::VectorXd& alpha, const ParamVector& v) {
    return 2.0 * alpha.sum() * v;
}

// ---------------------------------------------------------------------------

ObjectiveValues RankDeficientQuadratic::do_evaluate(const ParamVector& x) {
    ObjectiveValues f(2);
    f << (x[0] - 1.0) * (x[0] - 1.0), (x[0] + 1.0) * (x[0] + 1.0);
    return f;
}

GradientMatrix RankDeficientQuadratic::do_gradients(const ParamVector& x) {
    GradientMatrix G = GradientMatrix::Zero(2, 3);
    G(0, 0) = 2.0 * (x[0] - 1.0);
    G(1, 0) = 2.0 * (x[0] + 1.0);
    return G;
}

ParamVector RankDeficientQuadratic::do_hvp(const ParamVector&, const Eigen::VectorXd& alpha, const ParamVector& v) {
    ParamVector hv = ParamVector::Zero(3);
    hv[0] = 2.0 * alpha.sum() * v[0];
    return hv;
}

// ---------------------------------------------------------------------------

BlobsDataset make_blobs(std::uint64_t seed, std::size_t points) {
    Rng rng = Rng(seed).split(1);
    BlobsDataset data;
    data.features.resize(static_cast<Eigen::Index>(points), 2);
    data.task1.resize(points);
    data.task2.resize(points);
    constexpr double spread = 0.7;
    for (std::size_t i = 0; i < points; ++i) {
        // cycle through the four blobs so classes stay balanced
        const int sx = (i % 4) & 1 ? 1 : 0;
        const int sy = (i % 4) & 2 ? 1 : 0;
        const auto r = static_cast<Eigen::Index>(i);
        data.features(r, 0) = (sx ? 1.0 : -1.0) + spread * rng.normal();
        data.features(r, 1) = (sy ? 1.0 : -1.0) + spread * rng.normal();
        data.task1[i] = sx;
        data.task2[i] = sy;
        if (rng.uniform(0.0, 1.0) < kBlobLabelNoise) data.task1[i] = 1 - sx;
        if (rng.uniform(0.0, 1.0) < kBlobLabelNoise) data.task2[i] = 1 - sy;
    }
    return data;
}

void write_dataset_csv(std::ostream& out, const BlobsDataset& data) {
    out << "feature1,feature2,label_task1,label_task2\n";
    out.precision(17);
    for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
        out << data.features(i, 0) << ',' << data.features(i, 1) << ',' << data.task1[i] << ','
            << data.task2[i] << '\n';
    }
}

ToyMlp::ToyMlp(ToyMlpConfig config) : config_(std::move(config)) {
    const auto& w = config_.widths;
    if (w.size() < 2) throw ConfigError("toy-mlp: need at least input and class widths");
    for (auto width : w) {
        if (width == 0) throw ConfigError("toy-mlp: zero-width layer");
    }
    if (w.front() != 2) throw ConfigError("toy-mlp: the blobs dataset has 2 input features");
    if (w.back() != 2) throw ConfigError("toy-mlp: each head classifies 2 classes");
    data_ = make_blobs(config_.seed);

    int node = tape_.input(data_.features);
    for (std::size_t layer = 1; layer + 1 < w.size(); ++layer) {
        node = tape_.affine(node, w[layer], "trunk" + std::to_string(layer));
        node = tape_.tanh(node);
    }
    const int trunk = node;
    const std::vector<int>* labels[2] = {&data_.task1, &data_.task2};
    for (int task = 0; task < 2; ++task) {
        int head = tape_.affine(trunk, w.back(), "head" + std::to_string(task + 1));
        head = tape_.softmax_xent(head, *labels[task]);
        tape_.mark_output(tape_.mean(head));
    }
}

ParamVector ToyMlp::initial_point() const {
    Rng rng = Rng(config_.seed).split(2);
    ParamVector x = ParamVector::Zero(static_cast<Eigen::Index>(tape_.param_count()));
    for (const auto& block : tape_.layout()) {
        if (block.cols == 1) continue;  // biases start at zero
        const double scale = 1.0 / std::sqrt(static_cast<double>(block.cols));
        for (std::size_t i = 0; i < block.size(); ++i) x[static_cast<Eigen::Index>(block.offset + i)] = scale * rng.normal();
    }
    return x;
}

ObjectiveValues ToyMlp::do_evaluate(const ParamVector& x) { return tape_.forward(x); }
GradientMatrix ToyMlp::do_gradients(const ParamVector& x) { return tape_.gradients(x); }
ParamVector ToyMlp::do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) {
    return tape_.hvp(x, alpha, v);
}

std::unique_ptr<ToyMlp> toy_mlp_build(std::uint64_t seed, std::vector<std::size_t> widths) {
    return std::make_unique<ToyMlp>(ToyMlpConfig{seed, std::move(widths)});
}

// ---------------------------------------------------------------------------

std::vector<std::string> benchmark_ids() { return {"zdt2", "two-quadratics", "rank-deficient", "toy-mlp"}; }

std::unique_ptr<Problem> make_benchmark(const std::string& id, std::uint64_t seed) {
    if (id == "zdt2") return std::make_unique<Zdt2Variant>();
    if (id == "two-quadratics") {
        return std::make_unique<TwoQuadratics>(ParamVector::Zero(2), ParamVector::Unit(2, 0));
    }
    if (id == "rank-deficient") return std::make_unique<RankDeficientQuadratic>();
    if (id == "toy-mlp") return toy_mlp_build(seed);
    throw ConfigError("unknown benchmark '" + id + "'");
}

ParamVector benchmark_start(const std::string& id, const Problem& problem, Rng& rng) {
    if (id == "zdt2") {
        // perturbed point near the innermost cylinder, away from the f1 = 0 ray
        ParamVector x = Zdt2Variant::pareto_point(rng.uniform(0.2, 0.9), rng.uniform(0.0, 2.0 * kPi));
        x[0] += 0.02 * rng.normal();
        x.tail<2>() *= 1.0 + 0.01 * rng.normal();
        return x;
    }
    if (id == "toy-mlp") return dynamic_cast<const ToyMlp&>(problem).initial_point();
    return 2.0 * rng.normal_vector(static_cast<Eigen::Index>(problem.dim()));
}

ObjectiveValues default_reference(const std::string& id) {
    ObjectiveValues ref(2);
    if (id == "zdt2") {
        ref << 1.1, 11.0;
    } else if (id == "toy-mlp") {
        ref.setConstant(std::log(2.0) * 1.1);
    } else if (id == "two-quadratics") {
        ref.setConstant(1.1);  // |b - a|^2 = 1 for the registry instance
    } else if (id == "rank-deficient") {
        ref.setConstant(4.4);
    } else {
        throw ConfigError("unknown benchmark '" + id + "'");
    }
    return ref;
}

} // namespace pareto
