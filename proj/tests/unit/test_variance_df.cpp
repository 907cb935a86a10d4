#include "remeta/distributions.hpp"
#include "remeta/error.hpp"
#include "remeta/heterogeneity.hpp"
#include "remeta/variance.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace remeta;
using doctest::Approx;

namespace {

Weights make_weights(std::vector<double> w) {
    Weights out;
    out.w = std::move(w);
    for (double x : out.w) out.total += x;
    return out;
}

}  // namespace

TEST_CASE("var_approx") {
    const StudySet s({0.0, 1.0, 2.0, 3.0}, {1.0, 1.0, 1.0, 1.0});
    CHECK(var_approx(s, weights(s, 0.0)).value == 0.25);
    const StudySet e({0.0, 1.0, 2.0}, {0.5, 0.5, 0.5});
    CHECK(var_approx(e, weights(e, 0.75)).value == Approx(1.0 / 3.0).epsilon(1e-15));  // w = 1
    const StudySet sbp = testing::sbp();
    CHECK(var_approx(sbp, weights(sbp, 0.0282497046052905)).value == Approx(0.00583220467388967).epsilon(1e-11));
}

TEST_CASE("var_hk") {
    const StudySet c({2.0, 2.0, 2.0}, {0.3, 0.5, 0.9});
    const Weights wc = weights(c, 0.1);
    CHECK(var_hk(c, wc, pooled_mean(c, wc)).value == 0.0);
    const StudySet two({0.0, 1.0}, {1.0, 1.0});
    CHECK(var_hk(two, weights(two, 0.0), 0.5).value == Approx(0.25).epsilon(1e-15));
    const StudySet sbp = testing::sbp();
    const Weights w = weights(sbp, 0.0282497046052905);
    CHECK(var_hk(sbp, w, pooled_mean(sbp, w)).value == Approx(0.0100095865872773).epsilon(1e-10));
    // literal identity: q_w / (K - 1) / sum w
    double qw = 0.0;
    const double mu = pooled_mean(sbp, w);
    for (std::size_t k = 0; k < sbp.size(); ++k) qw += w.w[k] * (sbp.y()[k] - mu) * (sbp.y()[k] - mu);
    CHECK(var_hk(sbp, w, mu).value == Approx(qw / 9.0 / w.total).epsilon(1e-13));
}

TEST_CASE("var_sj") {
    const StudySet e({0.0, 1.0, 2.0, 3.0, 4.0}, {0.4, 0.4, 0.4, 0.4, 0.4});
    const Weights we = weights(e, 0.2);
    for (double h : sj_leverages(e, we)) CHECK(h == Approx(1.0 / 5.0).epsilon(1e-14));
    const StudySet c({1.0, 1.0, 1.0}, {0.3, 0.5, 0.9});
    const Weights wc = weights(c, 0.0);
    CHECK(var_sj(c, wc, 1.0).value == 0.0);
    const StudySet sbp = testing::sbp();
    const double t = 0.069958611983466;
    const Weights w = weights(sbp, t);
    CHECK(var_sj(sbp, w, pooled_mean(sbp, w)).value == Approx(0.0106803285768207).epsilon(1e-8));
}

TEST_CASE("sj leverages are the hat values of the weighted mean") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const StudySet s = testing::random_set(rng, 3 + i % 6, 0.1, 0.01, 2.0);
        const Weights w = weights(s, 0.05 * (i % 4));
        const auto h = sj_leverages(s, w);
        double sum = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            CHECK(h[k] == Approx(w.w[k] / w.total).epsilon(1e-13));
            CHECK(h[k] > 0.0);
            CHECK(h[k] < 1.0);
            sum += h[k];
        }
        CHECK(sum == Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("kr_information") {
    CHECK(kr_information(make_weights({1.0, 1.0})) == Approx(0.5).epsilon(1e-15));
    // equal weights: K w^2 / 2 - w^2 + w^2 / 2 = w^2 (K - 1) / 2
    for (std::size_t K : {3u, 7u, 20u})
        for (double w : {0.3, 2.0, 11.0})
            CHECK(kr_information(make_weights(std::vector<double>(K, w))) ==
                  Approx(w * w * (K - 1) / 2.0).epsilon(1e-13));
    const StudySet sbp = testing::sbp();
    const double I = kr_information(weights(sbp, 0.069958611983466));
    CHECK(I > 0.0);
    CHECK(I == Approx(415.080039290827).epsilon(1e-8));
}

TEST_CASE("var_kr") {
    // w = (1, 4): S1 = 5, S2 = 17, S3 = 65, I = 8.5 - 13 + 5.78 = 1.28, brace = 13 - 11.56 = 1.44
    // Var = 0.2 + 2 * 1.44 / (1.28 * 5) = 0.65, nu = 2 * 1.28 / (0.65 * 17)^2
    const StudySet two({0.0, 1.0}, {1.0, 0.5});
    const VarianceEstimate v = var_kr(two, make_weights({1.0, 4.0}));
    CHECK(v.value == Approx(0.65).epsilon(1e-14));
    REQUIRE(v.kr_df);
    CHECK(*v.kr_df == Approx(2.56 / (11.05 * 11.05)).epsilon(1e-13));
    CHECK(*v.kr_info == Approx(1.28).epsilon(1e-14));

    // equal weights collapse
    for (std::size_t K : {3u, 6u, 15u}) {
        const StudySet e(std::vector<double>(K, 0.1), std::vector<double>(K, 0.7));
        const Weights w = weights(e, 0.2);
        const VarianceEstimate kr = var_kr(e, w);
        CHECK(std::fabs(kr.value - var_approx(e, w).value) <= 1e-12 * var_approx(e, w).value);
        CHECK(*kr.kr_df == Approx(static_cast<double>(K - 1)).epsilon(1e-12));
        CHECK(kr.warning.empty());
    }

    const StudySet sbp = testing::sbp();
    const VarianceEstimate s = var_kr(sbp, weights(sbp, 0.069958611983466));
    CHECK(s.value == Approx(0.0113968127923818).epsilon(1e-8));
    CHECK(*s.kr_df == Approx(6.95096711570922).epsilon(1e-8));
}

TEST_CASE("var_kr exceeds var_approx when variances are very unequal") {
    const StudySet s({-9.0, -7.5, -10.2, -8.1, -12.0, -6.4, -8.8}, {0.3, 2.5, 0.4, 3.0, 1.8, 0.25, 2.2});
    const double t = tau2_reml(s).tau2;
    const Weights w = weights(s, t);
    CHECK(var_kr(s, w).value > 1.05 * var_approx(s, w).value);
}

TEST_CASE("t distribution quantiles") {
    CHECK(t_quantile(0.975, 1e7) == Approx(1.959964).epsilon(5e-6));
    CHECK(t_quantile(0.975, 8.0) == Approx(2.306004).epsilon(5e-6));
    CHECK(t_quantile(0.5, 3.0) == 0.0);
    CHECK(t_quantile(0.025, 8.0) == Approx(-t_quantile(0.975, 8.0)).epsilon(1e-14));
    CHECK_THROWS_AS(t_quantile(0.975, 0.0), DomainError);
    CHECK_THROWS_AS(t_quantile(1.0, 5.0), DomainError);
}
