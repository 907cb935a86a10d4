#include "remeta/variance.hpp"

#include "remeta/error.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace remeta {

std::string_view to_string(VarianceMethod m) noexcept {
    switch (m) {
        case VarianceMethod::APX: return "APX";
        case VarianceMethod::HK: return "HK";
        case VarianceMethod::SJ: return "SJ";
        case VarianceMethod::KR: return "KR";
    }
    return "?";
}

namespace {

struct PowerSums {
    double s1, s2, s3;
};

PowerSums power_sums(const Weights& w) {
    std::vector<double> w2(w.w.size());
    std::vector<double> w3(w.w.size());
    for (std::size_t k = 0; k < w.w.size(); ++k) {
        w2[k] = w.w[k] * w.w[k];
        w3[k] = w2[k] * w.w[k];
    }
    return {w.total, order_invariant_sum(w2), order_invariant_sum(w3)};
}

}  // namespace

VarianceEstimate var_approx(const StudySet&, const Weights& w) {
    VarianceEstimate out;
    out.method = VarianceMethod::APX;
    out.value = 1.0 / w.total;
    return out;
}

VarianceEstimate var_hk(const StudySet& s, const Weights& w, double mu) {
    const std::size_t K = s.size();
    if (K < 2) throw DomainError("the Hartung-Knapp variance requires at least 2 studies");
    std::vector<double> terms(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double d = s.y()[k] - mu;
        terms[k] = w.w[k] * d * d;
    }
    VarianceEstimate out;
    out.method = VarianceMethod::HK;
    out.value = order_invariant_sum(terms) / static_cast<double>(K - 1) / w.total;
    return out;
}

std::vector<double> sj_leverages(const StudySet& s, const Weights& w) {
    const std::size_t K = s.size();
    // second term: sum_l w_l^2 (sigma_l^2 + tau2) / ((sigma_k^2 + tau2) (sum_l w_l)^2), the squared-total reading
    std::vector<double> num(K);
    for (std::size_t l = 0; l < K; ++l) num[l] = w.w[l] * w.w[l] * (s.variances()[l] + w.tau2);
    const double ratio = order_invariant_sum(num) / (w.total * w.total);
    std::vector<double> h(K);
    for (std::size_t k = 0; k < K; ++k)
        h[k] = 2.0 * w.w[k] / w.total - ratio / (s.variances()[k] + w.tau2);
    return h;
}

VarianceEstimate var_sj(const StudySet& s, const Weights& w, double mu) {
    const std::size_t K = s.size();
    const std::vector<double> h = sj_leverages(s, w);
    std::vector<double> terms(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (!(h[k] < 1.0))
            throw DomainError("degenerate leverage h = " + std::to_string(h[k]) + " for " + s.label(k) +
                              " in the Sidik-Jonkman variance");
        const double d = s.y()[k] - mu;
        terms[k] = w.w[k] * w.w[k] * d * d / (1.0 - h[k]);
    }
    VarianceEstimate out;
    out.method = VarianceMethod::SJ;
    out.value = order_invariant_sum(terms) / (w.total * w.total);
    return out;
}

double kr_information(const Weights& w) {
    const PowerSums p = power_sums(w);
    const double ratio = std::pow(p.s2 / p.s1, kKrInformationRatioPower);
    const double info = 0.5 * p.s2 - p.s3 / p.s1 + 0.5 * ratio;
    if (!(info > 0.0) || !std::isfinite(info)) {
        std::ostringstream msg;
        msg << "expected information for tau2 is not positive (" << info << ")";
        throw NumericalError(msg.str());
    }
    return info;
}

VarianceEstimate var_kr(const StudySet&, const Weights& w) {
    const PowerSums p = power_sums(w);
    const double info = kr_information(w);
    const double ratio = p.s2 / p.s1;
    double brace = p.s3 / p.s1 - ratio * ratio;
    VarianceEstimate out;
    out.method = VarianceMethod::KR;
    if (brace < 0.0) {
        if (brace < -1e-12 * (p.s3 / p.s1))
            out.warning = "negative Kenward-Roger bias adjustment clamped to zero";
        brace = 0.0;
    }
    out.value = 1.0 / p.s1 + 2.0 * brace / (info * p.s1);
    out.kr_info = info;
    const double scaled = out.value * p.s2;
    out.kr_df = 2.0 * info / (scaled * scaled);
    return out;
}

}  // namespace remeta
