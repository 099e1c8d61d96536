#include "pareto/autodiff.hpp"

#include <algorithm>

namespace pareto::autodiff {

using std::size_t;

int Tape::input(const Eigen::MatrixXd& features) {
    if (!nodes_.empty()) throw StructureError("tape: the input must be the first node");
    features_ = features;
    nodes_.push_back({Op::input, -1, -1, -1, -1, static_cast<size_t>(features.rows()),
                      static_cast<size_t>(features.cols())});
    cache_valid_ = false;
    return 0;
}

int Tape::affine(int arg, size_t out_width, const std::string& name) {
    if (arg < 0 || arg >= static_cast<int>(nodes_.size())) throw StructureError("tape: bad affine argument");
    if (out_width == 0) throw ConfigError("tape: zero-width affine layer '" + name + "'");
    const auto& in = nodes_[arg];
    blocks_.push_back({name + ".weight", param_count_, out_width, in.width});
    param_count_ += out_width * in.width;
    blocks_.push_back({name + ".bias", param_count_, out_width, 1});
    param_count_ += out_width;
    Node node{Op::affine, arg, static_cast<int>(blocks_.size()) - 2, static_cast<int>(blocks_.size()) - 1,
              -1, in.rows, out_width};
    nodes_.push_back(node);
    cache_valid_ = false;
    return static_cast<int>(nodes_.size()) - 1;
}

int Tape::tanh(int arg) {
    const auto& in = nodes_.at(arg);
    nodes_.push_back({Op::tanh, arg, -1, -1, -1, in.rows, in.width});
    return static_cast<int>(nodes_.size()) - 1;
}

int Tape::softmax_xent(int logits, std::vector<int> labels) {
    const auto& in = nodes_.at(logits);
    if (labels.size() != in.rows) throw DimensionError("tape: label count differs from batch size");
    for (int y : labels) {
        if (y < 0 || static_cast<size_t>(y) >= in.width) throw DomainError("tape: label out of class range");
    }
    labels_.push_back(std::move(labels));
    nodes_.push_back({Op::softmax_xent, logits, -1, -1, static_cast<int>(labels_.size()) - 1, in.rows, 1});
    return static_cast<int>(nodes_.size()) - 1;
}

int Tape::mean(int arg) {
    nodes_.at(arg);
    nodes_.push_back({Op::mean, arg, -1, -1, -1, 1, 1});
    return static_cast<int>(nodes_.size()) - 1;
}

void Tape::mark_output(int node) {
    const auto& n = nodes_.at(node);
    if (n.rows != 1 || n.width != 1) throw StructureError("tape: outputs must be scalar nodes");
    outputs_.push_back(node);
}

std::pair<size_t, size_t> Tape::locate(size_t flat) const {
    for (size_t b = 0; b < blocks_.size(); ++b) {
        if (flat >= blocks_[b].offset && flat < blocks_[b].offset + blocks_[b].size()) {
            return {b, flat - blocks_[b].offset};
        }
    }
    throw DomainError("tape: flat index beyond parameter count");
}

void Tape::check_params(const ParamVector& x) const {
    if (static_cast<size_t>(x.size()) != param_count_) {
        throw DimensionError("tape: expected " + std::to_string(param_count_) + " parameters");
    }
}

template <class S>
void Tape::run_forward(const std::vector<S>& params, std::vector<std::vector<S>>& values) const {
    using std::exp;
    using std::log;
    using std::tanh;
    values.assign(nodes_.size(), {});
    for (size_t k = 0; k < nodes_.size(); ++k) {
        const Node& node = nodes_[k];
        auto& out = values[k];
        out.assign(node.rows * node.width, S(0.0));
        switch (node.op) {
        case Op::input:
            for (size_t r = 0; r < node.rows; ++r)
                for (size_t c = 0; c < node.width; ++c) out[r * node.width + c] = S(features_(r, c));
            break;
        case Op::affine: {
            const auto& in = values[node.arg];
            const size_t in_w = nodes_[node.arg].width;
            const auto& W = blocks_[node.weight];
            const auto& b = blocks_[node.bias];
            for (size_t r = 0; r < node.rows; ++r) {
                for (size_t o = 0; o < node.width; ++o) {
                    S acc = params[b.offset + o];
                    for (size_t i = 0; i < in_w; ++i) acc += in[r * in_w + i] * params[W.offset + o * in_w + i];
                    out[r * node.width + o] = acc;
                }
            }
            break;
        }
        case Op::tanh: {
            const auto& in = values[node.arg];
            for (size_t i = 0; i < out.size(); ++i) out[i] = tanh(in[i]);
            break;
        }
        case Op::softmax_xent: {
            const auto& z = values[node.arg];
            const size_t classes = nodes_[node.arg].width;
            const auto& y = labels_[node.labels];
            for (size_t r = 0; r < node.rows; ++r) {
                double shift = value_of(z[r * classes]);
                for (size_t c = 1; c < classes; ++c) shift = std::max(shift, value_of(z[r * classes + c]));
                S sum(0.0);
                for (size_t c = 0; c < classes; ++c) sum += exp(z[r * classes + c] - S(shift));
                out[r] = S(shift) + log(sum) - z[r * classes + y[r]];
            }
            break;
        }
        case Op::mean: {
            const auto& in = values[node.arg];
            S acc(0.0);
            for (const auto& v : in) acc += v;
            out[0] = acc / S(static_cast<double>(in.size()));
            break;
        }
        }
    }
}

template <class S>
void Tape::run_reverse(const std::vector<S>& params, const std::vector<std::vector<S>>& values,
                       const std::vector<S>& output_seeds, std::vector<S>& grad) const {
    using std::exp;
    std::vector<std::vector<S>> adj(nodes_.size());
    for (size_t k = 0; k < nodes_.size(); ++k) adj[k].assign(values[k].size(), S(0.0));
    for (size_t t = 0; t < outputs_.size(); ++t) adj[outputs_[t]][0] += output_seeds[t];
    grad.assign(param_count_, S(0.0));

    for (size_t kk = nodes_.size(); kk-- > 0;) {
        const Node& node = nodes_[kk];
        const auto& a = adj[kk];
        switch (node.op) {
        case Op::input:
            break;
        case Op::mean: {
            auto& da = adj[node.arg];
            const S scale = a[0] / S(static_cast<double>(da.size()));
            for (auto& v : da) v += scale;
            break;
        }
        case Op::softmax_xent: {
            const auto& z = values[node.arg];
            auto& dz = adj[node.arg];
            const size_t classes = nodes_[node.arg].width;
            const auto& y = labels_[node.labels];
            for (size_t r = 0; r < node.rows; ++r) {
                double shift = value_of(z[r * classes]);
                for (size_t c = 1; c < classes; ++c) shift = std::max(shift, value_of(z[r * classes + c]));
                std::vector<S> e(classes);
                S sum(0.0);
                for (size_t c = 0; c < classes; ++c) {
                    e[c] = exp(z[r * classes + c] - S(shift));
                    sum += e[c];
                }
                for (size_t c = 0; c < classes; ++c) {
                    S p = e[c] / sum;
                    if (static_cast<int>(c) == y[r]) p -= S(1.0);
                    dz[r * classes + c] += a[r] * p;
                }
            }
            break;
        }
        case Op::tanh: {
            const auto& yv = values[kk];
            auto& dx = adj[node.arg];
            for (size_t i = 0; i < yv.size(); ++i) dx[i] += a[i] * (S(1.0) - yv[i] * yv[i]);
            break;
        }
        case Op::affine: {
            const auto& in = values[node.arg];
            auto& dx = adj[node.arg];
            const size_t in_w = nodes_[node.arg].width;
            const auto& W = blocks_[node.weight];
            const auto& b = blocks_[node.bias];
            const bool propagate = nodes_[node.arg].op != Op::input;
            for (size_t r = 0; r < node.rows; ++r) {
                for (size_t o = 0; o < node.width; ++o) {
                    const S g = a[r * node.width + o];
                    grad[b.offset + o] += g;
                    for (size_t i = 0; i < in_w; ++i) {
                        grad[W.offset + o * in_w + i] += g * in[r * in_w + i];
                        if (propagate) dx[r * in_w + i] += g * params[W.offset + o * in_w + i];
                    }
                }
            }
            break;
        }
        }
    }
}

void Tape::ensure_forward(const ParamVector& x) {
    check_params(x);
    if (cache_valid_ && cached_x_.size() == x.size() && (cached_x_.array() == x.array()).all()) return;
    std::vector<double> params(x.data(), x.data() + x.size());
    run_forward(params, cached_values_);
    ++sweeps_.forward;
    for (int o : outputs_) {
        if (!std::isfinite(cached_values_[o][0])) {
            cache_valid_ = false;
            throw NumericError("tape: numeric overflow in forward pass");
        }
    }
    cached_x_ = x;
    cache_valid_ = true;
}

ObjectiveValues Tape::forward(const ParamVector& x) {
    ensure_forward(x);
    ObjectiveValues f(outputs_.size());
    for (size_t t = 0; t < outputs_.size(); ++t) f[t] = cached_values_[outputs_[t]][0];
    return f;
}

ParamVector Tape::gradient(const ParamVector& x, size_t task) {
    if (task >= outputs_.size()) throw DomainError("tape: task index out of range");
    ensure_forward(x);
    std::vector<double> params(x.data(), x.data() + x.size());
    std::vector<double> seeds(outputs_.size(), 0.0);
    seeds[task] = 1.0;
    std::vector<double> grad;
    run_reverse(params, cached_values_, seeds, grad);
    ++sweeps_.reverse;
    ParamVector g = Eigen::Map<const ParamVector>(grad.data(), static_cast<Eigen::Index>(grad.size()));
    if (!g.allFinite()) throw NumericError("tape: numeric overflow in reverse pass");
    return g;
}

GradientMatrix Tape::gradients(const ParamVector& x) {
    GradientMatrix G(outputs_.size(), param_count_);
    for (size_t t = 0; t < outputs_.size(); ++t) G.row(t) = gradient(x, t).transpose();
    return G;
}

ParamVector Tape::hvp(const ParamVector& x, const Eigen::VectorXd& alpha, const ParamVector& v) {
    check_params(x);
    check_params(v);
    if (static_cast<size_t>(alpha.size()) != outputs_.size()) throw DimensionError("tape: alpha length");
    std::vector<Dual> params(param_count_);
    for (size_t i = 0; i < param_count_; ++i) params[i] = Dual(x[i], v[i]);
    std::vector<std::vector<Dual>> values;
    run_forward(params, values);
    std::vector<Dual> seeds(outputs_.size());
    for (size_t t = 0; t < outputs_.size(); ++t) seeds[t] = Dual(alpha[t], 0.0);
    std::vector<Dual> grad;
    run_reverse(params, values, seeds, grad);
    ++sweeps_.augmented;
    ParamVector hv(param_count_);
    for (size_t i = 0; i < param_count_; ++i) hv[i] = grad[i].d;
    if (!hv.allFinite()) throw NumericError("tape: numeric overflow in augmented sweep");
    return hv;
}

} // namespace pareto::autodiff
