// Reference computations used only by the tests. Each one is deliberately
// naive and shares no code with the library routine it checks.
#ifndef PARETO_TESTS_ORACLES_HPP
#define PARETO_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline Eigen::VectorXd central_difference(const std::function<double(const Eigen::VectorXd&)>& f,
                                          const Eigen::VectorXd& x, double h = 1e-6) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

struct QpSolution {
    Eigen::VectorXd alpha;
    double value = std::numeric_limits<double>::infinity();
};

/// min a^T Q a over the simplex by enumerating every support set and solving
/// the equality-constrained QP on it with a dense LU.
inline QpSolution simplex_qp_by_supports(const Eigen::MatrixXd& Q) {
    const auto m = Q.rows();
    QpSolution best;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<Eigen::Index> s;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (mask & (1u << i)) s.push_back(i);
        }
        const auto k = static_cast<Eigen::Index>(s.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) kkt(i, j) = 2.0 * Q(s[i], s[j]);
            kkt(i, k) = 1.0;
            kkt(k, i) = 1.0;
        }
        rhs[k] = 1.0;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        if (lu.rank() < k + 1) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
        bool feasible = true;
        for (Eigen::Index i = 0; i < k; ++i) {
            if (sol[i] < -1e-12) feasible = false;
            a[s[i]] = std::max(0.0, sol[i]);
        }
        if (!feasible) continue;
        a /= a.sum();
        const double value = a.dot(Q * a);
        if (value < best.value) best = {a, value};
    }
    return best;
}

/// Indices of points no other point dominates, by all-pairs comparison.
inline std::vector<std::size_t> nondominated_indices(const std::vector<Eigen::VectorXd>& pts) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            bool le = true, lt = false;
            for (Eigen::Index d = 0; d < pts[i].size(); ++d) {
                le = le && pts[j][d] <= pts[i][d];
                lt = lt || pts[j][d] < pts[i][d];
            }
            dominated = le && lt;
        }
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

/// Hypervolume by inclusion-exclusion over all subsets (small inputs only).
inline double hypervolume_inclusion_exclusion(const std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& ref) {
    const auto n = pts.size();
    double total = 0.0;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        Eigen::VectorXd corner = Eigen::VectorXd::Constant(ref.size(), -std::numeric_limits<double>::infinity());
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ul << i)) {
                corner = corner.cwiseMax(pts[i].cwiseMin(ref));
                ++bits;
            }
        }
        const double vol = (ref - corner).cwiseMax(0.0).prod();
        total += (bits % 2 ? 1.0 : -1.0) * vol;
    }
    return total;
}

/// Symmetric matrix with prescribed eigenvalues and a random orthogonal basis.
inline Eigen::MatrixXd symmetric_with_spectrum(const Eigen::VectorXd& eig, const Eigen::MatrixXd& gaussian) {
    const Eigen::MatrixXd q = gaussian.householderQr().householderQ();
    return q * eig.asDiagonal() * q.transpose();
}

} // namespace oracle

#endif
