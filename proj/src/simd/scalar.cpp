// Scalar reference kernels. Built with -ffp-contract=off.

#include "remeta/simd/kernels.hpp"

#include <cmath>

namespace remeta::simd::scalar {

// The reductions below fix one summation layout that the vector variants reproduce
// lane for lane, so every kernel set returns identical bits.

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    double p[8] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        for (std::size_t j = 0; j < 8; ++j) p[j] = std::fma(a[i + j], b[i + j], p[j]);
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j) p[j] = std::fma(a[i + j], b[i + j], p[j]);
    double q[4];
    for (std::size_t j = 0; j < 4; ++j) q[j] = p[j] + p[j + 4];
    double s = (q[0] + q[2]) + (q[1] + q[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept {
    const std::size_t n = powers.size();
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j) {
            powers[i + j] *= ratios[i + j];
            acc[j] += powers[i + j];
        }
    double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) {
        powers[i] *= ratios[i];
        s += powers[i];
    }
    return s;
}

void pooled_moments(std::span<const double> tau2, std::span<const double> y,
                    std::span<const double> variances, std::span<double> mu,
                    std::span<double> var_hk) noexcept {
    const std::size_t K = y.size();
    const double dof = static_cast<double>(K - 1);
    for (std::size_t b = 0; b < tau2.size(); ++b) {
        const double t = tau2[b];
        double sw = 0.0;
        double swy = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double w = 1.0 / (variances[k] + t);
            sw = sw + w;
            swy = swy + w * y[k];
        }
        const double m = swy / sw;
        double r = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double w = 1.0 / (variances[k] + t);
            const double d = y[k] - m;
            r = r + (w * d) * d;
        }
        mu[b] = m;
        var_hk[b] = r / sw / dof;
    }
}

}  // namespace remeta::simd::scalar
