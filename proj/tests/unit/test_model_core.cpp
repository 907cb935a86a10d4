#include "remeta/error.hpp"
#include "remeta/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>

using namespace remeta;
using doctest::Approx;

TEST_CASE("StudySet validates its inputs") {
    CHECK_THROWS_AS(StudySet({}, {}), DomainError);
    CHECK_THROWS_AS(StudySet({1.0, 2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(StudySet({1.0}, {0.0}), DomainError);
    CHECK_THROWS_AS(StudySet({1.0}, {-1.0}), DomainError);
    CHECK_THROWS_AS(StudySet({std::numeric_limits<double>::quiet_NaN()}, {1.0}), DomainError);
    CHECK_THROWS_AS(StudySet({1.0}, {std::numeric_limits<double>::infinity()}), DomainError);
    CHECK_THROWS_AS(StudySet({1.0, 2.0}, {1.0, 1.0}, {"a"}), DomainError);
}

TEST_CASE("StudySet labels fall back to a study number") {
    const StudySet s({1.0, 2.0}, {1.0, 1.0});
    CHECK_FALSE(s.has_labels());
    CHECK(s.label(0) == "Study 1");
    CHECK(s.label(1) == "Study 2");
    const StudySet t({1.0}, {1.0}, {"Alpha"});
    CHECK(t.label(0) == "Alpha");
}

TEST_CASE("from_variances keeps the variances exactly") {
    const StudySet s = StudySet::from_variances({0.0, 1.0}, {0.3, 0.7});
    CHECK(s.variances()[0] == 0.3);
    CHECK(s.variances()[1] == 0.7);
    CHECK(s.sigma()[1] == Approx(std::sqrt(0.7)));
}

TEST_CASE("weights: unit variances") {
    const StudySet s({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
    const Weights w = weights(s, 0.0);
    for (double x : w.w) CHECK(x == 1.0);
    CHECK(w.total == 3.0);
}

TEST_CASE("weights: direct arithmetic") {
    const StudySet s({0.0, 1.0}, {1.0, 2.0});
    const Weights w = weights(s, 3.0);
    CHECK(w.w[0] == Approx(0.25).epsilon(1e-15));
    CHECK(w.w[1] == Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK_THROWS_AS(weights(s, -0.1), DomainError);
}

TEST_CASE("weights: sbp study 4 at tau2 = 0.0282") {
    const Weights w = weights(testing::sbp(), 0.0282);
    // 1 / (0.19898325^2 + 0.0282) evaluated by hand: 0.0395943338 + 0.0282 = 0.0677943338
    CHECK(w.w[3] == Approx(14.7504).epsilon(1e-5));
    CHECK(w.w[3] == Approx(14.73).epsilon(2e-3));
}

TEST_CASE("pooled_mean") {
    const StudySet c({0.7, 0.7, 0.7}, {0.1, 0.5, 2.0});
    CHECK(pooled_mean(c, weights(c, 0.3)) == 0.7);
    const StudySet sym({-1.0, 1.0}, {1.0, 1.0});
    CHECK(pooled_mean(sym, weights(sym, 0.0)) == 0.0);
    const StudySet s = testing::sbp();
    CHECK(pooled_mean(s, weights(s, 0.0282497046052905)) == Approx(-0.334059652975226).epsilon(1e-12));
    CHECK(pooled_mean(s, weights(s, 0.0282497046052905)) == Approx(-0.3341).epsilon(1.5e-4));
}

TEST_CASE("i_squared") {
    const StudySet s = testing::sbp();
    CHECK(i_squared(s, 0.0) == 0.0);
    CHECK(i_squared(s, 0.0282497046052905) == Approx(70.4766847680981).epsilon(1e-12));
    CHECK(std::fabs(i_squared(s, 0.0282497046052905) - 70.5) < 0.05);
    CHECK(i_squared(s, 0.069958611983466) == Approx(85.5316435097323).epsilon(1e-10));
    CHECK_THROWS_AS(typical_within_variance(StudySet({1.0}, {1.0})), DomainError);
}

TEST_CASE("order_invariant_sum ignores the order of terms") {
    std::vector<double> t{1e16, 1.0, -1e16, 3.5, 1e-8, -2.25};
    const double ref = order_invariant_sum(t);
    CHECK(ref == Approx(2.25 + 1e-8).epsilon(1e-14));
    std::sort(t.begin(), t.end());
    do {
        CHECK(order_invariant_sum(t) == ref);
    } while (std::next_permutation(t.begin(), t.end()));
}
