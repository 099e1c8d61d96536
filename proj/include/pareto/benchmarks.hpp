#ifndef PARETO_BENCHMARKS_HPP
#define PARETO_BENCHMARKS_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pareto/autodiff.hpp"
#include "pareto/core.hpp"
#include "pareto/random.hpp"

namespace pareto {

// ---------------------------------------------------------------------------
// ZDT2 variant: n = 3, m = 2.
//
//   y1 = (sin(x1 + x2^2 + x3^2) + 1) / 2
//   y2 = y3 = (cos(x2^2 + x3^2) + 1) / 2
//   g  = 1 + 9/2 (y2 + y3)
//   f1 = y1,  f2 = g - y1^2 / g
//
// Front: f2 = 1 - f1^2 on f1 in [0, 1]. Set: x2^2 + x3^2 = (2k + 1) pi.
// ---------------------------------------------------------------------------

ObjectiveValues zdt2_eval(const ParamVector& x);

/// |f2 - (1 - f1^2)| for f1 in [0, 1], +inf otherwise.
double zdt2_front_residual(const ObjectiveValues& f);

enum class Cylinder { innermost, nearest };

/// Distance of x2^2 + x3^2 from (2k + 1) pi, for k = 0 (innermost) or the
/// best k >= 0 (nearest).
double zdt2_set_residual(const ParamVector& x, Cylinder which = Cylinder::innermost);

class Zdt2Variant final : public Problem {
public:
    std::size_t dim() const override { return 3; }
    std::size_t num_objectives() const override { return 2; }
    std::string name() const override { return "zdt2"; }
    std::unique_ptr<Problem> clone() const override { return std::make_unique<Zdt2Variant>(*this); }

    /// Exact point on the innermost cylinder with f1 = y1 at angle theta.
    static ParamVector pareto_point(double f1, double theta);

protected:
    ObjectiveValues do_evaluate(const ParamVector& x) override;
    GradientMatrix do_gradients(const ParamVector& x) override;
    ParamVector do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) override;
};

/// Closed-form 3x3 Hessians of (f1, f2) for the ZDT2 variant.
std::pair<Eigen::Matrix3d, Eigen::Matrix3d> zdt2_hessians(const ParamVector& x);

// ---------------------------------------------------------------------------
// f1 = |x - a|^2, f2 = |x - b|^2. Pareto set is the segment [a, b].
// ---------------------------------------------------------------------------
class TwoQuadratics final : public Problem {
public:
    TwoQuadratics(ParamVector a, ParamVector b);

    std::size_t dim() const override { return static_cast<std::size_t>(a_.size()); }
    std::size_t num_objectives() const override { return 2; }
    std::string name() const override { return "two-quadratics"; }
    std::unique_ptr<Problem> clone() const override { return std::make_unique<TwoQuadratics>(*this); }

    const ParamVector& a() const { return a_; }
    const ParamVector& b() const { return b_; }
    /// Euclidean distance from x to the segment [a, b].
    double set_residual(const ParamVector& x) const;
    /// |sqrt(f1) + sqrt(f2) - |b - a|| (zero exactly on the front).
    double front_residual(const ObjectiveValues& f) const;

protected:
    ObjectiveValues do_evaluate(const ParamVector& x) override;
    GradientMatrix do_gradients(const ParamVector& x) override;
    ParamVector do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) override;

private:
    ParamVector a_;
    ParamVector b_;
};

// ---------------------------------------------------------------------------
// n = 3, m = 2: f1 = (x1 - 1)^2, f2 = (x1 + 1)^2. H = diag(2, 0, 0) for every
// simplex weight, so e2 and e3 span its null space everywhere.
// ---------------------------------------------------------------------------
class RankDeficientQuadratic final : public Problem {
public:
    std::size_t dim() const override { return 3; }
    std::size_t num_objectives() const override { return 2; }
    std::string name() const override { return "rank-deficient"; }
    std::unique_ptr<Problem> clone() const override { return std::make_unique<RankDeficientQuadratic>(*this); }

protected:
    ObjectiveValues do_evaluate(const ParamVector& x) override;
    GradientMatrix do_gradients(const ParamVector& x) override;
    ParamVector do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) override;
};

// ---------------------------------------------------------------------------
// Two-task tanh MLP on a synthetic blobs dataset.
// ---------------------------------------------------------------------------

struct BlobsDataset {
    Eigen::MatrixXd features;  // points x 2
    std::vector<int> task1;
    std::vector<int> task2;
};

inline constexpr std::size_t kBlobPoints = 200;
inline constexpr double kBlobLabelNoise = 0.10;

/// Four Gaussian blobs at (+-1, +-1). Task 1 labels the x side, task 2 the y
/// side; each label is flipped independently with probability 10%.
BlobsDataset make_blobs(std::uint64_t seed, std::size_t points = kBlobPoints);
void write_dataset_csv(std::ostream& out, const BlobsDataset& data);

struct ToyMlpConfig {
    std::uint64_t seed = 0;
    /// Input width, hidden trunk widths, classes per head.
    std::vector<std::size_t> widths{2, 8, 2};
};

class ToyMlp final : public Problem {
public:
    explicit ToyMlp(ToyMlpConfig config);

    std::size_t dim() const override { return tape_.param_count(); }
    std::size_t num_objectives() const override { return 2; }
    std::string name() const override { return "toy-mlp"; }
    std::unique_ptr<Problem> clone() const override { return std::make_unique<ToyMlp>(*this); }

    const ToyMlpConfig& config() const { return config_; }
    const BlobsDataset& dataset() const { return data_; }
    autodiff::Tape& tape() { return tape_; }
    const autodiff::Tape& tape() const { return tape_; }
    /// Seeded initial weights, N(0, 1/fan_in).
    ParamVector initial_point() const;

protected:
    ObjectiveValues do_evaluate(const ParamVector& x) override;
    GradientMatrix do_gradients(const ParamVector& x) override;
    ParamVector do_hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) override;

private:
    ToyMlpConfig config_;
    BlobsDataset data_;
    autodiff::Tape tape_;
};

std::unique_ptr<ToyMlp> toy_mlp_build(std::uint64_t seed, std::vector<std::size_t> widths = {2, 8, 2});

// ---------------------------------------------------------------------------
// Registry used by the CLI.
// ---------------------------------------------------------------------------

std::vector<std::string> benchmark_ids();
std::unique_ptr<Problem> make_benchmark(const std::string& id, std::uint64_t seed);
/// Seeded starting point for a benchmark.
ParamVector benchmark_start(const std::string& id, const Problem& problem, Rng& rng);
/// Default hypervolume reference point for a benchmark.
ObjectiveValues default_reference(const std::string& id);

} // namespace pareto

#endif
