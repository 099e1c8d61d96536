#ifndef PARETO_AUTODIFF_HPP
#define PARETO_AUTODIFF_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pareto/core.hpp"

namespace pareto::autodiff {

/// Forward-mode dual number: value plus one directional derivative.
struct Dual {
    double v = 0.0;
    double d = 0.0;

    Dual() = default;
    Dual(double value, double tangent = 0.0) : v(value), d(tangent) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(const Dual& a, const Dual& b) {
        return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
    }
    friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
};

inline Dual exp(const Dual& a) { const double e = std::exp(a.v); return {e, e * a.d}; }
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual tanh(const Dual& a) { const double t = std::tanh(a.v); return {t, (1.0 - t * t) * a.d}; }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

/// Contiguous slice of the flat parameter vector holding one weight matrix
/// (row-major, rows x cols) or one bias vector (cols == 1).
struct ParamBlock {
    std::string name;
    std::size_t offset = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t size() const { return rows * cols; }
};

enum class Op { input, affine, tanh, softmax_xent, mean };

struct Node {
    Op op = Op::input;
    int arg = -1;
    int weight = -1;
    int bias = -1;
    int labels = -1;
    std::size_t rows = 0;
    std::size_t width = 0;
};

/// Sweep statistics, used to check that an HVP costs one augmented
/// forward+reverse pass.
struct SweepCounts {
    std::uint64_t forward = 0;
    std::uint64_t reverse = 0;
    std::uint64_t augmented = 0;
};

/// Straight-line computational graph over a full batch with reverse-mode
/// gradients and forward-over-reverse Hessian-vector products.
///
/// Supported nodes: the data input, affine maps with owned parameters, tanh,
/// per-row softmax cross-entropy against an integer label channel and a mean
/// reduction. Scalar nodes registered with mark_output() are the objectives.
///
/// A Tape caches the last forward pass, so it is single-threaded; give each
/// worker its own copy.
class Tape {
public:
    int input(const Eigen::MatrixXd& features);
    int affine(int arg, std::size_t out_width, const std::string& name);
    int tanh(int arg);
    int softmax_xent(int logits, std::vector<int> labels);
    int mean(int arg);
    void mark_output(int node);

    std::size_t param_count() const { return param_count_; }
    std::size_t num_outputs() const { return outputs_.size(); }
    const std::vector<ParamBlock>& layout() const { return blocks_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& outputs() const { return outputs_; }
    const Eigen::MatrixXd& features() const { return features_; }
    const std::vector<std::vector<int>>& label_channels() const { return labels_; }

    /// Block index and in-block offset of flat parameter `flat`.
    std::pair<std::size_t, std::size_t> locate(std::size_t flat) const;

    ObjectiveValues forward(const ParamVector& x);
    ParamVector gradient(const ParamVector& x, std::size_t task);
    /// All task gradients from one forward and one reverse sweep per task.
    GradientMatrix gradients(const ParamVector& x);
    /// sum_i alpha_i Hessian(f_i)(x) v from one dual-number forward and
    /// reverse sweep.
    ParamVector hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v);

    const SweepCounts& sweeps() const { return sweeps_; }

private:
    template <class S>
    void run_forward(const std::vector<S>& params, std::vector<std::vector<S>>& values) const;
    template <class S>
    void run_reverse(const std::vector<S>& params, const std::vector<std::vector<S>>& values,
                     const std::vector<S>& output_seeds, std::vector<S>& grad) const;

    void ensure_forward(const ParamVector& x);
    void check_params(const ParamVector& x) const;

    std::vector<Node> nodes_;
    std::vector<ParamBlock> blocks_;
    std::vector<int> outputs_;
    std::vector<std::vector<int>> labels_;
    Eigen::MatrixXd features_;
    std::size_t param_count_ = 0;

    // forward cache for the last x
    ParamVector cached_x_;
    std::vector<std::vector<double>> cached_values_;
    bool cache_valid_ = false;

    SweepCounts sweeps_;
};

} // namespace pareto::autodiff

#endif
