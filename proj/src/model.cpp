#include "remeta/model.hpp"

#include "remeta/error.hpp"

#include <algorithm>
#include <cmath>

namespace remeta {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::domain: return "domain_error";
        case ErrorCode::numerical: return "numerical_error";
        case ErrorCode::range: return "range_error";
        case ErrorCode::parse: return "parse_error";
        case ErrorCode::io: return "io_error";
    }
    return "error";
}

StudySet::StudySet(std::vector<double> y, std::vector<double> sigma, std::vector<std::string> labels)
    : y_(std::move(y)), sigma_(std::move(sigma)), labels_(std::move(labels)) {
    if (y_.empty()) throw DomainError("study set is empty");
    if (y_.size() != sigma_.size())
        throw DomainError("y and se must have the same length (" + std::to_string(y_.size()) +
                          " vs " + std::to_string(sigma_.size()) + ")");
    if (!labels_.empty() && labels_.size() != y_.size())
        throw DomainError("labels must have one entry per study");
    variance_.resize(y_.size());
    for (std::size_t k = 0; k < y_.size(); ++k) {
        if (!std::isfinite(y_[k]))
            throw DomainError("effect estimate of study " + std::to_string(k + 1) + " is not finite");
        if (!std::isfinite(sigma_[k]) || sigma_[k] <= 0.0)
            throw DomainError("standard error of study " + std::to_string(k + 1) +
                              " must be finite and > 0");
        variance_[k] = sigma_[k] * sigma_[k];
        if (variance_[k] <= 0.0 || !std::isfinite(variance_[k]))
            throw DomainError("variance of study " + std::to_string(k + 1) + " is not representable");
    }
}

StudySet StudySet::from_variances(std::vector<double> y, const std::vector<double>& variances,
                                  std::vector<std::string> labels) {
    std::vector<double> sigma(variances.size());
    for (std::size_t k = 0; k < variances.size(); ++k) {
        if (!std::isfinite(variances[k]) || variances[k] <= 0.0)
            throw DomainError("variance of study " + std::to_string(k + 1) + " must be finite and > 0");
        sigma[k] = std::sqrt(variances[k]);
    }
    StudySet s(std::move(y), std::move(sigma), std::move(labels));
    // keep the caller's variances exactly rather than the rounded square of sqrt(v)
    s.variance_ = variances;
    return s;
}

std::string StudySet::label(std::size_t k) const {
    if (k < labels_.size()) return labels_[k];
    return "Study " + std::to_string(k + 1);
}

double order_invariant_sum(std::span<const double> terms) {
    std::vector<double> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    double comp = 0.0;
    for (double t : sorted) {
        const double next = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - next) + t;
        else
            comp += (t - next) + sum;
        sum = next;
    }
    return sum + comp;
}

Weights weights(const StudySet& s, double tau2) {
    if (!std::isfinite(tau2)) throw DomainError("tau2 must be finite");
    if (tau2 < 0.0) throw DomainError("tau2 must be >= 0");
    Weights out;
    out.tau2 = tau2;
    out.w.resize(s.size());
    const auto var = s.variances();
    for (std::size_t k = 0; k < s.size(); ++k) out.w[k] = 1.0 / (var[k] + tau2);
    out.total = order_invariant_sum(out.w);
    return out;
}

double pooled_mean(const StudySet& s, const Weights& w) {
    // centred on min(y) so that constant inputs are reproduced exactly
    const auto y = s.y();
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    std::vector<double> terms(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) terms[k] = w.w[k] * (y[k] - *lo);
    const double mu = *lo + order_invariant_sum(terms) / w.total;
    return std::clamp(mu, *lo, *hi);
}

double typical_within_variance(const StudySet& s) {
    const std::size_t K = s.size();
    if (K < 2) throw DomainError("I-squared requires at least 2 studies");
    std::vector<double> v1(K);
    std::vector<double> v2(K);
    for (std::size_t k = 0; k < K; ++k) {
        v1[k] = 1.0 / s.variances()[k];
        v2[k] = v1[k] * v1[k];
    }
    const double s1 = order_invariant_sum(v1);
    const double s2 = order_invariant_sum(v2);
    return static_cast<double>(K - 1) * s1 / (s1 * s1 - s2);
}

double i_squared(const StudySet& s, double tau2) {
    if (!(tau2 >= 0.0) || !std::isfinite(tau2)) throw DomainError("tau2 must be finite and >= 0");
    const double within = typical_within_variance(s);
    return 100.0 * tau2 / (tau2 + within);
}

}  // namespace remeta
