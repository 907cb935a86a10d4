#pragma once

#include "remeta/model.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace remeta {

enum class VarianceMethod { APX, HK, SJ, KR };

std::string_view to_string(VarianceMethod m) noexcept;

struct VarianceEstimate {
    double value = 0.0;
    VarianceMethod method = VarianceMethod::APX;
    std::optional<double> kr_df;    // nu, KR only
    std::optional<double> kr_info;  // expected information for tau2, KR only
    std::string warning;
};

/// 1 / sum w.
VarianceEstimate var_approx(const StudySet& s, const Weights& w);

/// Hartung-Knapp: sum_k w_k (y_k - mu)^2 / ((K - 1) sum_k w_k).
VarianceEstimate var_hk(const StudySet& s, const Weights& w, double mu);

/// Leverages h_k used by the Sidik-Jonkman estimator.
std::vector<double> sj_leverages(const StudySet& s, const Weights& w);

/// Sidik-Jonkman bias-corrected estimator. Throws DomainError naming the
/// study when a leverage reaches 1.
VarianceEstimate var_sj(const StudySet& s, const Weights& w, double mu);

/// Expected information for tau2:
/// 1/2 sum w^2 - sum w^3 / sum w + 1/2 (sum w^2 / sum w)^2.
/// Throws NumericalError when the result is not positive.
double kr_information(const Weights& w);

/// Exponent applied to the ratio sum w^2 / sum w in the third term of kr_information.
inline constexpr int kKrInformationRatioPower = 2;

/// Kenward-Roger bias-adjusted variance with approximate degrees of freedom
/// nu = 2 I / (Var_KR sum w^2)^2.
VarianceEstimate var_kr(const StudySet& s, const Weights& w);

}  // namespace remeta
