#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace remeta {

/// Effect estimates and within-study standard errors of K studies.
///
/// Construction validates that every estimate is finite and every standard
/// error is finite and strictly positive. The number of studies required
/// depends on the operation (most interval methods need K >= 3), so the
/// type itself only demands a non-empty set.
class StudySet {
public:
    StudySet(std::vector<double> y, std::vector<double> sigma,
             std::vector<std::string> labels = {});

    /// Builds a study set from within-study variances instead of standard errors.
    static StudySet from_variances(std::vector<double> y, const std::vector<double>& variances,
                                   std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return y_.size(); }
    std::span<const double> y() const noexcept { return y_; }
    std::span<const double> sigma() const noexcept { return sigma_; }
    /// sigma_k^2, cached.
    std::span<const double> variances() const noexcept { return variance_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

    /// Display label; falls back to "Study k" (1-based) when none was given.
    std::string label(std::size_t k) const;

private:
    std::vector<double> y_;
    std::vector<double> sigma_;
    std::vector<double> variance_;
    std::vector<std::string> labels_;
};

/// Sum that does not depend on the order of the terms: the terms are sorted
/// before a compensated (Neumaier) accumulation.
double order_invariant_sum(std::span<const double> terms);

/// Random-effects weights w_k = 1 / (sigma_k^2 + tau2).
struct Weights {
    std::vector<double> w;
    double tau2 = 0.0;
    double total = 0.0;
};

Weights weights(const StudySet& s, double tau2);

double pooled_mean(const StudySet& s, const Weights& w);

/// Typical within-study variance (K-1) S1 / (S1^2 - S2) with S_r = sum sigma_k^(-2r).
double typical_within_variance(const StudySet& s);

/// I^2 in percent: 100 tau2 / (tau2 + typical within-study variance).
double i_squared(const StudySet& s, double tau2);

}  // namespace remeta
