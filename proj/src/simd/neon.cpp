// NEON kernels (AArch64). Built with -ffp-contract=off.

#include "remeta/simd/kernels.hpp"

#include <arm_neon.h>

namespace remeta::simd::neon {

// Same summation layout as the scalar reference: eight fused partial sums for the
// dot product and four partial sums for the power update.

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    float64x2_t p01 = vdupq_n_f64(0.0);
    float64x2_t p23 = vdupq_n_f64(0.0);
    float64x2_t p45 = vdupq_n_f64(0.0);
    float64x2_t p67 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        p01 = vfmaq_f64(p01, vld1q_f64(pa + i), vld1q_f64(pb + i));
        p23 = vfmaq_f64(p23, vld1q_f64(pa + i + 2), vld1q_f64(pb + i + 2));
        p45 = vfmaq_f64(p45, vld1q_f64(pa + i + 4), vld1q_f64(pb + i + 4));
        p67 = vfmaq_f64(p67, vld1q_f64(pa + i + 6), vld1q_f64(pb + i + 6));
    }
    for (; i + 4 <= n; i += 4) {
        p01 = vfmaq_f64(p01, vld1q_f64(pa + i), vld1q_f64(pb + i));
        p23 = vfmaq_f64(p23, vld1q_f64(pa + i + 2), vld1q_f64(pb + i + 2));
    }
    const float64x2_t q01 = vaddq_f64(p01, p45);
    const float64x2_t q23 = vaddq_f64(p23, p67);
    double s = vaddvq_f64(vaddq_f64(q01, q23));
    for (; i < n; ++i) s += pa[i] * pb[i];
    return s;
}

double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept {
    const std::size_t n = powers.size();
    double* p = powers.data();
    const double* r = ratios.data();
    float64x2_t a01 = vdupq_n_f64(0.0);
    float64x2_t a23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t v01 = vmulq_f64(vld1q_f64(p + i), vld1q_f64(r + i));
        const float64x2_t v23 = vmulq_f64(vld1q_f64(p + i + 2), vld1q_f64(r + i + 2));
        vst1q_f64(p + i, v01);
        vst1q_f64(p + i + 2, v23);
        a01 = vaddq_f64(a01, v01);
        a23 = vaddq_f64(a23, v23);
    }
    double s = vaddvq_f64(vaddq_f64(a01, a23));
    for (; i < n; ++i) {
        p[i] *= r[i];
        s += p[i];
    }
    return s;
}

void pooled_moments(std::span<const double> tau2, std::span<const double> y,
                    std::span<const double> variances, std::span<double> mu,
                    std::span<double> var_hk) noexcept {
    const std::size_t K = y.size();
    const std::size_t nb = tau2.size();
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t dof = vdupq_n_f64(static_cast<double>(K - 1));
    std::size_t b = 0;
    for (; b + 2 <= nb; b += 2) {
        const float64x2_t t = vld1q_f64(tau2.data() + b);
        float64x2_t sw = vdupq_n_f64(0.0);
        float64x2_t swy = vdupq_n_f64(0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const float64x2_t w = vdivq_f64(one, vaddq_f64(vdupq_n_f64(variances[k]), t));
            sw = vaddq_f64(sw, w);
            swy = vaddq_f64(swy, vmulq_f64(w, vdupq_n_f64(y[k])));
        }
        const float64x2_t m = vdivq_f64(swy, sw);
        float64x2_t r = vdupq_n_f64(0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const float64x2_t w = vdivq_f64(one, vaddq_f64(vdupq_n_f64(variances[k]), t));
            const float64x2_t d = vsubq_f64(vdupq_n_f64(y[k]), m);
            r = vaddq_f64(r, vmulq_f64(vmulq_f64(w, d), d));
        }
        vst1q_f64(mu.data() + b, m);
        vst1q_f64(var_hk.data() + b, vdivq_f64(vdivq_f64(r, sw), dof));
    }
    if (b < nb)
        scalar::pooled_moments(tau2.subspan(b), y, variances, mu.subspan(b), var_hk.subspan(b));
}

}  // namespace remeta::simd::neon
