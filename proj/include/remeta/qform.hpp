#pragma once

// Exact distribution of the untruncated DerSimonian-Laird statistic.
//
// Under the random-effects model, Q = sum_k v_k (Y_k - Ybar)^2 is a quadratic
// form in normal variables and is distributed as sum_k lambda_k chi^2_k(1),
// where lambda_k are the eigenvalues of S = Sigma^{1/2} A Sigma^{1/2},
// Sigma = diag(sigma_k^2 + tau2) and A = V - v v^T / v_+. The CDF of Q is
// evaluated with Ruben's mixture-of-chi-squares series, which has a
// computable truncation bound, and the confidence distribution
// H(tau2) = 1 - F_Q(q_obs; tau2) is inverted by bisection.

#include "remeta/eigen.hpp"
#include "remeta/model.hpp"
#include "remeta/random.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace remeta {

struct QFormSpec {
    std::vector<double> sigma2;  // within-study variances
    std::vector<double> v;       // 1 / sigma2
    double v_total = 0.0;
    SymmetricMatrix a_matrix{0};  // V - v v^T / v_+

    static QFormSpec from_studies(const StudySet& s);
    std::size_t size() const noexcept { return v.size(); }
};

struct QSpectrum {
    double tau2 = 0.0;
    std::vector<double> lambda;  // descending, >= 0
};

/// Eigenvalues in [-1e-8, 0) are clamped to zero.
inline constexpr double kNegativeEigenvalueTolerance = 1e-8;
/// Eigenvalues at or below this fraction of the largest one are treated as exact zeros by q_cdf.
inline constexpr double kNegligibleEigenvalueRatio = 1e-9;

/// Matrix S = Sigma^{1/2} A Sigma^{1/2} at the given tau2.
SymmetricMatrix s_matrix(const QFormSpec& spec, double tau2);

QSpectrum spectrum(const QFormSpec& spec, double tau2);

struct QCdfOptions {
    double eps = 1e-10;  // absolute error bound on F_Q
    int maxit1 = 10000;  // maximum number of series terms
};

/// F_Q(q) = Pr(sum_k lambda_k chi^2_k(1) <= q) with absolute error <= eps.
double q_cdf(std::span<const double> lambda, double q, const QCdfOptions& opt = {});
inline double q_cdf(const QSpectrum& sp, double q, const QCdfOptions& opt = {}) {
    return q_cdf(sp.lambda, q, opt);
}

/// H(tau2) = 1 - F_Q(q_obs; tau2), the confidence distribution of tau2.
double h_function(const QFormSpec& spec, double q_obs, double tau2, const QCdfOptions& opt = {});

struct InversionOptions {
    double lower = 0.0;
    double upper = 1000.0;
    int maxit2 = 1000;
    double tol = std::pow(2.220446049250313e-16, 0.25);
};

/// Confidence distribution of tau2 for one data set, with a numerical inverse.
///
/// quantile(u) returns 0 when H(lower) > u. Otherwise it bisects [lower,
/// upper] at exact midpoints until the bracket is narrower than tol and
/// returns the linear interpolant of H inside the final bracket. Because the
/// bisection path depends only on u and H, quantiles() can share H
/// evaluations across draws and still return exactly what quantile() would.
class ConfidenceDistribution {
public:
    ConfidenceDistribution(QFormSpec spec, double q_obs, QCdfOptions cdf = {},
                           InversionOptions inv = {});

    double h(double tau2) const;
    double quantile(double u) const;
    std::vector<double> quantiles(std::span<const double> u, unsigned threads = 1) const;

    double q_obs() const noexcept { return q_obs_; }
    const QFormSpec& spec() const noexcept { return spec_; }
    const InversionOptions& inversion() const noexcept { return inv_; }

private:
    QFormSpec spec_;
    double q_obs_;
    QCdfOptions cdf_;
    InversionOptions inv_;
};

double h_inverse(const QFormSpec& spec, double q_obs, double u, const InversionOptions& inv = {},
                 const QCdfOptions& cdf = {});

/// One draw tau2 = H^{-1}(u) with u taken from `stream`.
double sample_tau2(const ConfidenceDistribution& dist, RandomStream& stream);

}  // namespace remeta
