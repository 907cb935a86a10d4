#include "remeta/error.hpp"
#include "remeta/heterogeneity.hpp"
#include "remeta/intervals.hpp"
#include "remeta/variance.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace remeta;
using testing::rel_close;

namespace {

StudySet permuted(const StudySet& s, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> y, se;
    for (std::size_t i : idx) y.push_back(s.y()[i]), se.push_back(s.sigma()[i]);
    return StudySet(y, se);
}

void check_limits(const std::optional<Limits>& a, const std::optional<Limits>& b, double shift, double scale,
                  double rel) {
    REQUIRE(a.has_value() == b.has_value());
    if (!a) return;
    const double ref = std::max({1.0, std::fabs(a->lower), std::fabs(a->upper)}) * std::fabs(scale);
    CHECK(std::fabs(b->lower - (a->lower * scale + shift)) <= rel * ref);
    CHECK(std::fabs(b->upper - (a->upper * scale + shift)) <= rel * ref);
    CHECK(b->df == doctest::Approx(a->df).epsilon(1e-9));
}

}  // namespace

TEST_CASE("heterogeneity and variances are permutation invariant") {
    std::mt19937_64 rng(100);
    for (int i = 0; i < 30; ++i) {
        const StudySet s = testing::random_set(rng, 6 + i % 5, 0.08);
        const StudySet p = permuted(s, rng);
        CHECK(q_statistic(s).q_obs == q_statistic(p).q_obs);
        CHECK(tau2_dl(s).tau2 == tau2_dl(p).tau2);
        CHECK(tau2_reml(s).tau2 == tau2_reml(p).tau2);
        CHECK(pi_hts(s).prediction->lower == pi_hts(p).prediction->lower);
        CHECK(pi_pr(s, VarianceMethod::HK).prediction->upper == pi_pr(p, VarianceMethod::HK).prediction->upper);
    }
}

TEST_CASE("variance estimates: location invariance and scale by c^2") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 30; ++i) {
        const StudySet s = testing::random_set(rng, 7, 0.05);
        const StudySet sh = testing::transform(s, 3.7, 1.0);
        const double t = tau2_reml(s).tau2;
        const Weights w = weights(s, t);
        const Weights wsh = weights(sh, t);
        CHECK(var_hk(s, w, pooled_mean(s, w)).value ==
              doctest::Approx(var_hk(sh, wsh, pooled_mean(sh, wsh)).value).epsilon(1e-10));
        CHECK(var_sj(s, w, pooled_mean(s, w)).value ==
              doctest::Approx(var_sj(sh, wsh, pooled_mean(sh, wsh)).value).epsilon(1e-10));
        for (double c : {0.5, 2.0, 3.0}) {
            const StudySet sc = testing::transform(s, 0.0, c);
            const double tc = tau2_reml(sc).tau2;
            CHECK(rel_close(tc, c * c * t, 1e-10, 1e-300) == true);
            const Weights wc = weights(sc, tc);
            CHECK(rel_close(var_approx(sc, wc).value, c * c * var_approx(s, w).value, 1e-10));
            CHECK(rel_close(var_hk(sc, wc, pooled_mean(sc, wc)).value,
                            c * c * var_hk(s, w, pooled_mean(s, w)).value, 1e-10));
            CHECK(rel_close(var_sj(sc, wc, pooled_mean(sc, wc)).value,
                            c * c * var_sj(s, w, pooled_mean(s, w)).value, 1e-10));
            CHECK(rel_close(var_kr(sc, wc).value, c * c * var_kr(s, w).value, 1e-10));
        }
    }
}

TEST_CASE("deterministic intervals are location and scale equivariant") {
    std::mt19937_64 rng(102);
    int done = 0;
    while (done < 30) {
        const StudySet s = testing::random_set(rng, 5 + done % 6, 0.1);
        std::vector<IntervalResult> base;
        try {
            base = {pi_hts(s),
                    pi_pr(s, VarianceMethod::APX),
                    pi_pr(s, VarianceMethod::HK),
                    pi_pr(s, VarianceMethod::SJ),
                    pi_pr(s, VarianceMethod::KR),
                    ci_wald(s, IntervalMethod::DL),
                    ci_wald(s, IntervalMethod::KR)};
        } catch (const Error&) {
            continue;
        }
        for (auto [shift, scale] : {std::pair{2.5, 1.0}, std::pair{0.0, 2.0}, std::pair{-1.0, 0.5}, std::pair{0.0, 3.0}}) {
            const StudySet t = testing::transform(s, shift, scale);
            const std::vector<IntervalResult> moved{pi_hts(t),
                                                    pi_pr(t, VarianceMethod::APX),
                                                    pi_pr(t, VarianceMethod::HK),
                                                    pi_pr(t, VarianceMethod::SJ),
                                                    pi_pr(t, VarianceMethod::KR),
                                                    ci_wald(t, IntervalMethod::DL),
                                                    ci_wald(t, IntervalMethod::KR)};
            for (std::size_t i = 0; i < base.size(); ++i) {
                check_limits(base[i].prediction, moved[i].prediction, shift, scale, 1e-10);
                check_limits(base[i].confidence, moved[i].confidence, shift, scale, 1e-10);
            }
        }
        ++done;
    }
}

TEST_CASE("bootstrap intervals are equivariant with shared streams") {
    const StudySet s = testing::sbp();
    BootstrapConfig cfg;
    cfg.b = 3000;
    cfg.seed = 55;
    const BootstrapSamples draws = bootstrap_samples(s, cfg);
    cfg.rnd = draws.tau2;
    const IntervalResult base = pi_nnf(s, cfg);
    for (auto [shift, scale] : {std::pair{1.25, 1.0}, std::pair{0.0, 2.0}, std::pair{0.0, 0.5}, std::pair{-3.0, 3.0}}) {
        BootstrapConfig c = cfg;
        std::vector<double> r = draws.tau2;
        for (auto& x : r) x *= scale * scale;
        c.rnd = r;
        const IntervalResult moved = pi_nnf(testing::transform(s, shift, scale), c);
        check_limits(base.prediction, moved.prediction, shift, scale, 1e-10);
        check_limits(base.confidence, moved.confidence, shift, scale, 1e-10);
    }
    // without precomputed draws the inversion itself must be equivariant up to its tolerance
    BootstrapConfig plain;
    plain.b = 3000;
    plain.seed = 55;
    const IntervalResult a = pi_nnf(s, plain);
    const IntervalResult b = pi_nnf(testing::transform(s, 0.75, 1.0), plain);
    check_limits(a.prediction, b.prediction, 0.75, 1.0, 1e-10);
}
