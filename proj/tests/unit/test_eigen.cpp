#include "remeta/eigen.hpp"
#include "remeta/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace remeta;
using doctest::Approx;

TEST_CASE("2x2 closed form") {
    SymmetricMatrix m(2);
    m(0, 0) = 2.0;
    m(1, 1) = 5.0;
    m(0, 1) = m(1, 0) = 2.0;
    // (a+d)/2 +- sqrt(((a-d)/2)^2 + b^2) = 3.5 +- 2.5
    const auto ev = symmetric_eigenvalues(m);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == Approx(6.0).epsilon(1e-14));
    CHECK(ev[1] == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("diagonal matrices are sorted descending") {
    SymmetricMatrix m(4);
    m(0, 0) = 1.0;
    m(1, 1) = 4.0;
    m(2, 2) = -2.0;
    m(3, 3) = 3.0;
    const auto ev = symmetric_eigenvalues(m);
    CHECK(ev == std::vector<double>{4.0, 3.0, 1.0, -2.0});
}

TEST_CASE("trace, Frobenius norm and characteristic identities on random matrices") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 12;
        SymmetricMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = z(rng);
        double fro = 0.0;
        for (double x : m.a) fro += x * x;
        const auto ev = symmetric_eigenvalues(m);
        double sum = 0.0, sq = 0.0;
        for (double e : ev) sum += e, sq += e * e;
        CHECK(sum == Approx(m.trace()).epsilon(1e-12).scale(std::sqrt(fro)));
        CHECK(sq == Approx(fro).epsilon(1e-12));
        // det(M - lambda I) = 0 via Gaussian elimination with partial pivoting
        for (double e : ev) {
            std::vector<double> a = m.a;
            for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= e;
            double det = 1.0;
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t p = c;
                for (std::size_t r = c + 1; r < n; ++r)
                    if (std::fabs(a[r * n + c]) > std::fabs(a[p * n + c])) p = r;
                if (p != c)
                    for (std::size_t k = 0; k < n; ++k) std::swap(a[p * n + k], a[c * n + k]);
                det *= a[c * n + c] / std::sqrt(fro);
                if (a[c * n + c] == 0.0) break;
                for (std::size_t r = c + 1; r < n; ++r) {
                    const double f = a[r * n + c] / a[c * n + c];
                    for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
                }
            }
            CHECK(std::fabs(det) < 1e-9);
        }
    }
}
