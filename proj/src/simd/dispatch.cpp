// Runtime selection of kernel variants. No intrinsics in this file.

#include "remeta/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace remeta::simd {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "?";
}

bool compiled(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
#if defined(REMETA_HAVE_AVX2)
        case Isa::avx2: return true;
#endif
#if defined(REMETA_HAVE_NEON)
        case Isa::neon: return true;
#endif
        default: return false;
    }
}

bool available(Isa isa) noexcept {
    if (!compiled(isa)) return false;
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(REMETA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon: return true;  // mandatory on AArch64
    }
    return false;
}

namespace {

Isa select() noexcept {
    if (const char* forced = std::getenv("REMETA_SIMD")) {
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (to_string(isa) == forced && available(isa)) return isa;
    }
    if (available(Isa::avx2)) return Isa::avx2;
    if (available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

struct Table {
    Isa isa;
    double (*dot)(std::span<const double>, std::span<const double>) noexcept;
    double (*scale_and_sum)(std::span<double>, std::span<const double>) noexcept;
    void (*pooled_moments)(std::span<const double>, std::span<const double>, std::span<const double>,
                           std::span<double>, std::span<double>) noexcept;
};

Table make_table() noexcept {
    const Isa isa = select();
    switch (isa) {
#if defined(REMETA_HAVE_AVX2)
        case Isa::avx2: return {isa, &avx2::dot, &avx2::scale_and_sum, &avx2::pooled_moments};
#endif
#if defined(REMETA_HAVE_NEON)
        case Isa::neon: return {isa, &neon::dot, &neon::scale_and_sum, &neon::pooled_moments};
#endif
        default: return {Isa::scalar, &scalar::dot, &scalar::scale_and_sum, &scalar::pooled_moments};
    }
}

const Table& table() noexcept {
    static const Table t = make_table();
    return t;
}

}  // namespace

Isa active() noexcept { return table().isa; }

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return table().dot(a, b);
}

double scale_and_sum(std::span<double> powers, std::span<const double> ratios) noexcept {
    return table().scale_and_sum(powers, ratios);
}

void pooled_moments(std::span<const double> tau2, std::span<const double> y,
                    std::span<const double> variances, std::span<double> mu,
                    std::span<double> var_hk) noexcept {
    table().pooled_moments(tau2, y, variances, mu, var_hk);
}

}  // namespace remeta::simd
