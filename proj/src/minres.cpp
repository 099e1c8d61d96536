#include "pareto/minres.hpp"

#include <cmath>
#include <limits>

namespace pareto {

MinresReport minres(const LinearOperator& apply, const ParamVector& b, const MinresOptions& options) {
    if (options.max_iterations < 1) throw ConfigError("minres: iteration cap must be at least 1");
    if (!(options.tolerance > 0.0)) throw ConfigError("minres: tolerance must be positive");
    require_finite(b, "minres right-hand side");

    const auto n = b.size();
    MinresReport report;
    report.solution = ParamVector::Zero(n);

    auto call = [&](const ParamVector& v) {
        ParamVector out = apply(v);
        ++report.operator_calls;
        if (out.size() != n) throw DimensionError("minres: operator output has wrong dimension");
        return out;
    };
    auto precondition = [&](const ParamVector& r) -> ParamVector {
        return options.preconditioner ? options.preconditioner(r) : r;
    };

    ParamVector r1 = b;
    ParamVector y = precondition(r1);
    const double beta1_sq = r1.dot(y);
    if (beta1_sq < 0.0) throw DomainError("minres: preconditioner is not positive definite");
    const double beta1 = std::sqrt(beta1_sq);
    if (beta1 == 0.0) {
        report.converged = true;
        return report;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    ParamVector r2 = r1;
    ParamVector w = ParamVector::Zero(n);
    ParamVector w2 = ParamVector::Zero(n);
    double oldb = 0.0;
    double beta = beta1;
    double dbar = 0.0;
    double epsln = 0.0;
    double phibar = beta1;
    double cs = -1.0;
    double sn = 0.0;

    for (int itn = 1; itn <= options.max_iterations; ++itn) {
        const ParamVector v = y / beta;
        y = call(v);
        if (itn >= 2) y -= (beta / oldb) * r1;
        const double alfa = v.dot(y);
        y -= (alfa / beta) * r2;
        r1 = r2;
        r2 = y;
        y = precondition(r2);
        oldb = beta;
        beta = std::sqrt(std::max(0.0, r2.dot(y)));

        // apply the previous rotation, then build the next one
        const double oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        const double gamma = std::max(std::hypot(gbar, beta), eps);
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        const double next_phibar = sn * phibar;

        const ParamVector w1 = w2;
        w2 = w;
        w = (v - oldeps * w1 - delta * w2) / gamma;
        const ParamVector next_x = report.solution + phi * w;

        if (!std::isfinite(next_phibar) || !next_x.allFinite() || !std::isfinite(beta)) {
            throw BreakdownError("minres: non-finite value in the Lanczos recurrence", report);
        }
        report.solution = next_x;
        phibar = next_phibar;
        report.residual_history.push_back(phibar);
        report.iterations_used = itn;

        if (phibar <= options.tolerance * beta1 || beta <= eps * beta1) {
            report.converged = true;
            break;
        }
    }

    report.final_residual = (b - call(report.solution)).norm();
    return report;
}

} // namespace pareto
