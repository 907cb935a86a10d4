#include "remeta/intervals.hpp"

#include "remeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace remeta {

std::string_view to_string(IntervalMethod m) noexcept {
    switch (m) {
        case IntervalMethod::boot: return "boot";
        case IntervalMethod::HTS: return "HTS";
        case IntervalMethod::DL: return "DL";
        case IntervalMethod::APX: return "APX";
        case IntervalMethod::HK: return "HK";
        case IntervalMethod::SJ: return "SJ";
        case IntervalMethod::KR: return "KR";
    }
    return "?";
}

std::optional<IntervalMethod> parse_interval_method(std::string_view name) noexcept {
    for (IntervalMethod m : {IntervalMethod::boot, IntervalMethod::HTS, IntervalMethod::DL,
                             IntervalMethod::APX, IntervalMethod::HK, IntervalMethod::SJ,
                             IntervalMethod::KR})
        if (to_string(m) == name) return m;
    return std::nullopt;
}

double percentile(std::span<const double> samples, double p) {
    if (samples.empty()) throw DomainError("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("percentile level must lie in [0, 1]");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double h = static_cast<double>(x.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= x.size()) return x.back();
    return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

void require_k3(const StudySet& s) {
    if (s.size() < 3)
        throw DomainError("this method requires K >= 3 studies (got K = " + std::to_string(s.size()) + ")");
}

Limits symmetric(double centre, double half_width_scale, double df, double alpha) {
    const double q = t_quantile(1.0 - alpha / 2.0, df);
    return {centre - q * half_width_scale, centre + q * half_width_scale, df};
}

struct RemlFit {
    HeterogeneityEstimate tau2;
    Weights w;
    double mu = 0.0;
    VarianceEstimate var;
};

RemlFit fit_reml(const StudySet& s, VarianceMethod variant, const RemlOptions& reml) {
    RemlFit fit;
    fit.tau2 = tau2_reml(s, reml);
    fit.w = weights(s, fit.tau2.tau2);
    fit.mu = pooled_mean(s, fit.w);
    switch (variant) {
        case VarianceMethod::APX: fit.var = var_approx(s, fit.w); break;
        case VarianceMethod::HK: fit.var = var_hk(s, fit.w, fit.mu); break;
        case VarianceMethod::SJ: fit.var = var_sj(s, fit.w, fit.mu); break;
        case VarianceMethod::KR: {
            fit.var = var_kr(s, fit.w);
            if (!(*fit.var.kr_df > 2.0)) {
                std::ostringstream msg;
                msg << "Kenward-Roger degrees of freedom nu = " << *fit.var.kr_df
                    << " leave nu - 1 <= 1; use another variance method (APX, HK or SJ)";
                throw NumericalError(msg.str());
            }
            break;
        }
    }
    return fit;
}

IntervalMethod method_for(VarianceMethod v) {
    switch (v) {
        case VarianceMethod::APX: return IntervalMethod::APX;
        case VarianceMethod::HK: return IntervalMethod::HK;
        case VarianceMethod::SJ: return IntervalMethod::SJ;
        case VarianceMethod::KR: return IntervalMethod::KR;
    }
    return IntervalMethod::APX;
}

void collect_warnings(IntervalResult& r, const HeterogeneityEstimate& h, const VarianceEstimate& v) {
    if (!h.warning.empty()) r.warnings.push_back(h.warning);
    if (!v.warning.empty()) r.warnings.push_back(v.warning);
}

}  // namespace

IntervalResult pi_hts(const StudySet& s, double alpha) {
    require_alpha(alpha);
    require_k3(s);
    const HeterogeneityEstimate dl = tau2_dl(s);
    const Weights w = weights(s, dl.tau2);
    const double mu = pooled_mean(s, w);
    const double var = var_approx(s, w).value;
    const double K = static_cast<double>(s.size());

    IntervalResult r;
    r.k = s.size();
    r.muhat = mu;
    r.method = IntervalMethod::HTS;
    r.tau2_method = Tau2Method::DL;
    r.variance_method = VarianceMethod::APX;
    r.alpha = alpha;
    r.prediction = symmetric(mu, std::sqrt(dl.tau2 + var), K - 2.0, alpha);
    r.confidence = symmetric(mu, std::sqrt(var), K - 1.0, alpha);
    r.tau2h = dl.tau2;
    r.i2h = i_squared(s, dl.tau2);
    return r;
}

IntervalResult pi_pr(const StudySet& s, VarianceMethod variant, double alpha, const RemlOptions& reml) {
    require_alpha(alpha);
    require_k3(s);
    const RemlFit fit = fit_reml(s, variant, reml);
    const double K = static_cast<double>(s.size());
    const bool kr = variant == VarianceMethod::KR;

    IntervalResult r;
    r.k = s.size();
    r.muhat = fit.mu;
    r.method = method_for(variant);
    r.tau2_method = Tau2Method::REML;
    r.variance_method = variant;
    r.alpha = alpha;
    const double pi_df = kr ? *fit.var.kr_df - 1.0 : K - 2.0;
    const double ci_df = kr ? *fit.var.kr_df : K - 1.0;
    r.prediction = symmetric(fit.mu, std::sqrt(fit.tau2.tau2 + fit.var.value), pi_df, alpha);
    r.confidence = symmetric(fit.mu, std::sqrt(fit.var.value), ci_df, alpha);
    r.tau2h = fit.tau2.tau2;
    r.i2h = i_squared(s, fit.tau2.tau2);
    collect_warnings(r, fit.tau2, fit.var);
    return r;
}

IntervalResult ci_wald(const StudySet& s, IntervalMethod variant, double alpha, const RemlOptions& reml) {
    require_alpha(alpha);
    require_k3(s);
    const double K = static_cast<double>(s.size());
    IntervalResult r;
    r.k = s.size();
    r.method = variant;
    r.alpha = alpha;
    switch (variant) {
        case IntervalMethod::DL: {
            const HeterogeneityEstimate dl = tau2_dl(s);
            const Weights w = weights(s, dl.tau2);
            r.muhat = pooled_mean(s, w);
            r.tau2_method = Tau2Method::DL;
            r.variance_method = VarianceMethod::APX;
            r.confidence = symmetric(r.muhat, std::sqrt(var_approx(s, w).value), K - 1.0, alpha);
            r.tau2h = dl.tau2;
            break;
        }
        case IntervalMethod::APX:
        case IntervalMethod::HK:
        case IntervalMethod::SJ:
        case IntervalMethod::KR: {
            const VarianceMethod vm = variant == IntervalMethod::APX  ? VarianceMethod::APX
                                      : variant == IntervalMethod::HK ? VarianceMethod::HK
                                      : variant == IntervalMethod::SJ ? VarianceMethod::SJ
                                                                      : VarianceMethod::KR;
            const RemlFit fit = fit_reml(s, vm, reml);
            r.muhat = fit.mu;
            r.tau2_method = Tau2Method::REML;
            r.variance_method = vm;
            const double df = vm == VarianceMethod::KR ? *fit.var.kr_df : K - 1.0;
            r.confidence = symmetric(fit.mu, std::sqrt(fit.var.value), df, alpha);
            r.tau2h = fit.tau2.tau2;
            collect_warnings(r, fit.tau2, fit.var);
            break;
        }
        default:
            throw DomainError("Wald confidence intervals support DL, APX, HK, SJ and KR, not " +
                              std::string(to_string(variant)));
    }
    r.i2h = i_squared(s, r.tau2h);
    return r;
}

}  // namespace remeta
