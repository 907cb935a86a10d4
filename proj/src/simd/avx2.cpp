// AVX2 kernels. Built with -mavx2 -mfma -ffp-contract=off; only reached when
// the dispatcher has confirmed AVX2 and FMA support at runtime.

#include "remeta/simd/kernels.hpp"

#include <immintrin.h>

namespace remeta::simd::avx2 {

namespace {

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += pa[i] * pb[i];
    return s;
}

double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept {
    const std::size_t n = powers.size();
    double* p = powers.data();
    const double* r = ratios.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(r + i));
        _mm256_storeu_pd(p + i, v);
        acc = _mm256_add_pd(acc, v);
    }
    double s = horizontal_sum(acc);
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
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d dof = _mm256_set1_pd(static_cast<double>(K - 1));
    std::size_t b = 0;
    // one lane per draw; each lane performs the scalar operation sequence
    for (; b + 4 <= nb; b += 4) {
        const __m256d t = _mm256_loadu_pd(tau2.data() + b);
        __m256d sw = _mm256_setzero_pd();
        __m256d swy = _mm256_setzero_pd();
        for (std::size_t k = 0; k < K; ++k) {
            const __m256d w = _mm256_div_pd(one, _mm256_add_pd(_mm256_set1_pd(variances[k]), t));
            sw = _mm256_add_pd(sw, w);
            swy = _mm256_add_pd(swy, _mm256_mul_pd(w, _mm256_set1_pd(y[k])));
        }
        const __m256d m = _mm256_div_pd(swy, sw);
        __m256d r = _mm256_setzero_pd();
        for (std::size_t k = 0; k < K; ++k) {
            const __m256d w = _mm256_div_pd(one, _mm256_add_pd(_mm256_set1_pd(variances[k]), t));
            const __m256d d = _mm256_sub_pd(_mm256_set1_pd(y[k]), m);
            r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(w, d), d));
        }
        _mm256_storeu_pd(mu.data() + b, m);
        _mm256_storeu_pd(var_hk.data() + b, _mm256_div_pd(_mm256_div_pd(r, sw), dof));
    }
    if (b < nb)
        scalar::pooled_moments(tau2.subspan(b), y, variances, mu.subspan(b), var_hk.subspan(b));
}

}  // namespace remeta::simd::avx2
