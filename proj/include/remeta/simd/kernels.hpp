#pragma once

// Data-parallel inner loops used by the quadratic-form CDF and the bootstrap.
//
// Every kernel has a scalar reference implementation in namespace `scalar`
// and optional vector variants (`avx2`, `neon`) compiled into separate
// translation units with their own target flags. The unqualified entry points
// in `remeta::simd` dispatch once, at first use, to the best variant the CPU
// supports. Tests compare each variant against the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>

namespace remeta::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Variants compiled into this build.
bool compiled(Isa isa) noexcept;
/// Variants compiled in and supported by the running CPU.
bool available(Isa isa) noexcept;
/// Variant the dispatcher selected. Honours REMETA_SIMD=scalar|avx2|neon when that variant is available.
Isa active() noexcept;

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// powers[i] *= ratios[i]; returns the sum of the updated powers.
double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept;

/// For each heterogeneity draw tau2[b], computes the random-effects pooled
/// mean mu[b] with weights 1 / (variances[k] + tau2[b]) and the
/// Hartung-Knapp variance sum_k w_k (y_k - mu)^2 / ((K - 1) sum_k w_k).
/// The vector variants are bit-identical to the scalar reference.
void pooled_moments(std::span<const double> tau2, std::span<const double> y,
                    std::span<const double> variances, std::span<double> mu,
                    std::span<double> var_hk) noexcept;

#define REMETA_SIMD_DECLARE_VARIANT(ns)                                                          \
    namespace ns {                                                                               \
    double dot(std::span<const double> a, std::span<const double> b) noexcept;                  \
    double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept;   \
    void pooled_moments(std::span<const double> tau2, std::span<const double> y,               \
                        std::span<const double> variances, std::span<double> mu,                \
                        std::span<double> var_hk) noexcept;                                     \
    }

REMETA_SIMD_DECLARE_VARIANT(scalar)
REMETA_SIMD_DECLARE_VARIANT(avx2)
REMETA_SIMD_DECLARE_VARIANT(neon)

#undef REMETA_SIMD_DECLARE_VARIANT

}  // namespace remeta::simd
