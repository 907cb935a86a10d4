#include "remeta/conversion.hpp"

#include "remeta/error.hpp"

#include <cmath>

namespace remeta {

std::string_view to_string(EffectType t) noexcept {
    switch (t) {
        case EffectType::logOR: return "logOR";
        case EffectType::logRR: return "logRR";
        case EffectType::RD: return "RD";
    }
    return "?";
}

std::optional<EffectType> parse_effect_type(std::string_view name) noexcept {
    for (EffectType t : {EffectType::logOR, EffectType::logRR, EffectType::RD})
        if (to_string(t) == name) return t;
    return std::nullopt;
}

void BinaryStudySet::validate() const {
    const std::size_t K = m1.size();
    if (K == 0) throw DomainError("binary study set is empty");
    if (n1.size() != K || m2.size() != K || n2.size() != K)
        throw DomainError("m1, n1, m2 and n2 must have the same length");
    if (!labels.empty() && labels.size() != K) throw DomainError("labels must have one entry per study");
    for (std::size_t k = 0; k < K; ++k) {
        const std::string where = " in study " + std::to_string(k + 1);
        if (n1[k] < 1 || n2[k] < 1) throw DomainError("number of patients must be >= 1" + where);
        if (m1[k] < 0 || m2[k] < 0) throw DomainError("number of events must be >= 0" + where);
        if (m1[k] > n1[k] || m2[k] > n2[k]) throw DomainError("events exceed patients" + where);
    }
}

namespace {

// Variance of an estimated proportion with the 1/16, 1/8 correction.
double proportion_variance(double m, double n) {
    const double p = (m + 1.0 / 16.0) / (n + 1.0 / 8.0);
    const double q = ((n - m) + 1.0 / 16.0) / (n + 1.0 / 8.0);
    return p * q / n;
}

}  // namespace

Effect convert_table(long m1_, long n1_, long m2_, long n2_, EffectType type) {
    const double m1 = static_cast<double>(m1_);
    const double n1 = static_cast<double>(n1_);
    const double m2 = static_cast<double>(m2_);
    const double n2 = static_cast<double>(n2_);
    Effect e;
    switch (type) {
        case EffectType::logOR:
            // difference of per-arm log odds: swapping the arms negates the estimate exactly
            e.estimate = std::log((m1 + 0.5) / ((n1 - m1) + 0.5)) - std::log((m2 + 0.5) / ((n2 - m2) + 0.5));
            e.variance = 1.0 / (m1 + 0.5) + 1.0 / ((n1 - m1) + 0.5) + 1.0 / (m2 + 0.5) +
                         1.0 / ((n2 - m2) + 0.5);
            break;
        case EffectType::logRR:
            e.estimate = std::log((m1 + 0.5) / (n1 + 0.5)) - std::log((m2 + 0.5) / (n2 + 0.5));
            e.variance = 1.0 / (m1 + 0.5) - 1.0 / (n1 + 0.5) + 1.0 / (m2 + 0.5) - 1.0 / (n2 + 0.5);
            break;
        case EffectType::RD:
            e.estimate = m1 / n1 - m2 / n2;
            e.variance = proportion_variance(m1, n1) + proportion_variance(m2, n2);
            break;
    }
    return e;
}

StudySet convert_bin(const BinaryStudySet& b, EffectType type) {
    b.validate();
    std::vector<double> y(b.size());
    std::vector<double> v(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        const Effect e = convert_table(b.m1[k], b.n1[k], b.m2[k], b.n2[k], type);
        y[k] = e.estimate;
        v[k] = e.variance;
    }
    return StudySet::from_variances(std::move(y), v, b.labels);
}

}  // namespace remeta
