#include "remeta/distributions.hpp"

#include "remeta/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace remeta {

namespace {

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("probability must lie in (0, 1), got " + std::to_string(p));
}

}  // namespace

double t_quantile(double p, double df) {
    require_probability(p);
    if (!(df > 0.0) || std::isnan(df)) throw DomainError("degrees of freedom must be > 0");
    if (std::isinf(df)) return normal_quantile(p);
    return boost::math::quantile(boost::math::students_t(df), p);
}

double t_cdf(double x, double df) {
    if (!(df > 0.0)) throw DomainError("degrees of freedom must be > 0");
    if (std::isinf(df)) return normal_cdf(x);
    return boost::math::cdf(boost::math::students_t(df), x);
}

double normal_quantile(double p) {
    require_probability(p);
    return boost::math::quantile(boost::math::normal(), p);
}

double normal_cdf(double x) { return boost::math::cdf(boost::math::normal(), x); }

double chi_squared_cdf(double x, double df) {
    if (!(df > 0.0)) throw DomainError("degrees of freedom must be > 0");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(0.5 * df, 0.5 * x);
}

}  // namespace remeta
