#pragma once

namespace remeta {

/// p-quantile of Student's t with (possibly non-integer) df > 0.
/// Throws DomainError for p outside (0, 1) or df <= 0.
double t_quantile(double p, double df);

double t_cdf(double x, double df);

double normal_quantile(double p);

double normal_cdf(double x);

/// Pr(chi^2_df <= x); 0 for x <= 0.
double chi_squared_cdf(double x, double df);

}  // namespace remeta
