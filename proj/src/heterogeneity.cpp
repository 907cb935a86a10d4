#include "remeta/heterogeneity.hpp"

#include "remeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace remeta {

std::string_view to_string(Tau2Method m) noexcept {
    switch (m) {
        case Tau2Method::DL: return "DL";
        case Tau2Method::UDL: return "UDL";
        case Tau2Method::REML: return "REML";
    }
    return "?";
}

QStatistic q_statistic(const StudySet& s) {
    const std::size_t K = s.size();
    std::vector<double> v(K);
    std::vector<double> v2(K);
    std::vector<double> v3(K);
    for (std::size_t k = 0; k < K; ++k) {
        v[k] = 1.0 / s.variances()[k];
        v2[k] = v[k] * v[k];
        v3[k] = v2[k] * v[k];
    }
    QStatistic out;
    out.s1 = order_invariant_sum(v);
    out.s2 = order_invariant_sum(v2);
    out.s3 = order_invariant_sum(v3);

    Weights fixed;
    fixed.w = v;
    fixed.total = out.s1;
    out.fixed_mean = pooled_mean(s, fixed);

    std::vector<double> terms(K);
    const auto y = s.y();
    for (std::size_t k = 0; k < K; ++k) {
        const double d = y[k] - out.fixed_mean;
        terms[k] = v[k] * d * d;
    }
    out.q_obs = order_invariant_sum(terms);
    return out;
}

double dl_denominator(const QStatistic& q) noexcept {
    return q.s1 + kDlDenominatorSign * q.s2 / q.s1;
}

double tau2_udl(const StudySet& s) {
    if (s.size() < 2) throw DomainError("heterogeneity estimation requires at least 2 studies");
    const QStatistic q = q_statistic(s);
    return (q.q_obs - static_cast<double>(s.size() - 1)) / dl_denominator(q);
}

HeterogeneityEstimate tau2_dl(const StudySet& s) {
    if (s.size() < 2) throw DomainError("heterogeneity estimation requires at least 2 studies");
    const QStatistic q = q_statistic(s);
    HeterogeneityEstimate out;
    out.method = Tau2Method::DL;
    out.q_obs = q.q_obs;
    out.s1 = q.s1;
    out.s2 = q.s2;
    out.s3 = q.s3;
    const double udl = (q.q_obs - static_cast<double>(s.size() - 1)) / dl_denominator(q);
    out.tau2 = std::max(0.0, udl);
    return out;
}

double reml_update(const StudySet& s, double tau2) {
    const Weights w = weights(s, tau2);
    const double mu = pooled_mean(s, w);
    const auto y = s.y();
    const auto var = s.variances();
    std::vector<double> num(s.size());
    std::vector<double> den(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double w2 = w.w[k] * w.w[k];
        const double d = y[k] - mu;
        num[k] = w2 * (d * d + 1.0 / w.total - var[k]);
        den[k] = w2;
    }
    return order_invariant_sum(num) / order_invariant_sum(den);
}

HeterogeneityEstimate tau2_reml(const StudySet& s, const RemlOptions& opt) {
    if (opt.maxiter < 1) throw DomainError("maxiter must be >= 1");
    if (!(opt.tol > 0.0)) throw DomainError("tol must be > 0");
    HeterogeneityEstimate out = tau2_dl(s);
    out.method = Tau2Method::REML;
    out.converged = false;

    double current = out.tau2;
    double last_step = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < opt.maxiter) {
        ++it;
        const double next = std::max(0.0, reml_update(s, current));
        const double step = std::abs(next - current);
        current = next;
        if (step < opt.tol) out.converged = true;
        if (out.converged) {
            // polish until the update stops shrinking
            if (step == 0.0 || step >= last_step || step <= 4.0 * 2.220446049250313e-16 * current) break;
        }
        last_step = step;
    }
    out.tau2 = current;
    out.iterations = it;
    if (!out.converged)
        out.warning = "REML estimation did not converge within " + std::to_string(opt.maxiter) +
                      " iterations";
    return out;
}

}  // namespace remeta
