#pragma once

#include "remeta/model.hpp"

#include <string>
#include <string_view>

namespace remeta {

enum class Tau2Method { DL, UDL, REML };

std::string_view to_string(Tau2Method m) noexcept;

/// Cochran's Q about the fixed-effect mean and the power sums S_r of the
/// fixed-effect weights v_k = 1 / sigma_k^2.
struct QStatistic {
    double q_obs = 0.0;
    double fixed_mean = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

struct HeterogeneityEstimate {
    double tau2 = 0.0;
    Tau2Method method = Tau2Method::DL;
    double q_obs = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    int iterations = 0;
    bool converged = true;
    std::string warning;  // non-empty when REML did not converge
};

/// Sign used in the DerSimonian-Laird denominator S1 + sign * S2 / S1.
/// The moment estimator needs the minus sign: E[Q] = (K-1) + tau2 (S1 - S2/S1).
inline constexpr double kDlDenominatorSign = -1.0;

QStatistic q_statistic(const StudySet& s);

/// DerSimonian-Laird denominator S1 - S2/S1.
double dl_denominator(const QStatistic& q) noexcept;

/// Untruncated moment estimator {Q - (K-1)} / (S1 - S2/S1); may be negative.
double tau2_udl(const StudySet& s);

/// Truncated DerSimonian-Laird estimator max(0, tau2_udl).
HeterogeneityEstimate tau2_dl(const StudySet& s);

struct RemlOptions {
    int maxiter = 100;
    double tol = 1e-8;
};

/// Right-hand side of the REML fixed-point equation evaluated at tau2 (not truncated).
double reml_update(const StudySet& s, double tau2);

/// REML estimate by fixed-point iteration started from the DL estimate.
///
/// Negative iterates are truncated to zero. The estimate is flagged converged
/// once two successive iterates differ by less than `tol`; iteration then
/// continues until the update stalls at machine precision so the result does
/// not depend on the absolute scale of the data. Hitting `maxiter` before
/// `tol` is reached returns the last iterate with converged = false and a
/// warning message.
HeterogeneityEstimate tau2_reml(const StudySet& s, const RemlOptions& opt = {});

}  // namespace remeta
