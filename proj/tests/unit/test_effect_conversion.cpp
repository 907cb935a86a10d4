#include "remeta/conversion.hpp"
#include "remeta/error.hpp"
#include "remeta/io/datasets.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace remeta;
using doctest::Approx;

namespace {

// Direct transcription of the ratio forms, used as an independent reference.
Effect reference(double m1, double n1, double m2, double n2, EffectType t) {
    switch (t) {
        case EffectType::logOR:
            return {std::log((m1 + 0.5) / (n1 - m1 + 0.5) * (n2 - m2 + 0.5) / (m2 + 0.5)),
                    1 / (m1 + 0.5) + 1 / (n1 - m1 + 0.5) + 1 / (m2 + 0.5) + 1 / (n2 - m2 + 0.5)};
        case EffectType::logRR:
            return {std::log((m1 + 0.5) * (n2 + 0.5) / ((n1 + 0.5) * (m2 + 0.5))),
                    1 / (m1 + 0.5) - 1 / (n1 + 0.5) + 1 / (m2 + 0.5) - 1 / (n2 + 0.5)};
        case EffectType::RD: {
            auto vp = [](double m, double n) {
                return (1 / n) * ((m + 1.0 / 16) / (n + 1.0 / 8)) * ((n - m + 1.0 / 16) / (n + 1.0 / 8));
            };
            return {m1 / n1 - m2 / n2, vp(m1, n1) + vp(m2, n2)};
        }
    }
    return {};
}

}  // namespace

TEST_CASE("logOR for the first cisapride trial") {
    const Effect e = convert_table(15, 16, 9, 16, EffectType::logOR);
    CHECK(e.estimate == Approx(2.0989).epsilon(5e-5));
    CHECK(e.variance == Approx(0.9698).epsilon(5e-5));
    CHECK(e.estimate == Approx(std::log((15.5 / 1.5) * (7.5 / 9.5))).epsilon(1e-14));
}

TEST_CASE("extreme and symmetric tables") {
    CHECK(convert_table(10, 10, 0, 7, EffectType::RD).estimate == 1.0);
    for (EffectType t : {EffectType::logOR, EffectType::logRR, EffectType::RD}) {
        CHECK(convert_table(4, 9, 4, 9, t).estimate == 0.0);
        CHECK(convert_table(0, 5, 0, 5, t).estimate == 0.0);
    }
}

TEST_CASE("1000 random tables: re-derivation, antisymmetry, positive variances") {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 1000; ++i) {
        const long n1 = std::uniform_int_distribution<long>(1, 300)(rng);
        const long n2 = std::uniform_int_distribution<long>(1, 300)(rng);
        const long m1 = std::uniform_int_distribution<long>(0, n1)(rng);
        const long m2 = std::uniform_int_distribution<long>(0, n2)(rng);
        for (EffectType t : {EffectType::logOR, EffectType::logRR, EffectType::RD}) {
            const Effect e = convert_table(m1, n1, m2, n2, t);
            const Effect r = reference(m1, n1, m2, n2, t);
            const Effect sw = convert_table(m2, n2, m1, n1, t);
            CHECK(std::fabs(e.estimate - r.estimate) <= 1e-12 * std::max(1.0, std::fabs(r.estimate)));
            CHECK(std::fabs(e.variance - r.variance) <= 1e-12 * r.variance);
            CHECK(sw.estimate == -e.estimate);
            CHECK(std::fabs(sw.variance - e.variance) <= 1e-12 * e.variance);
            if (t == EffectType::logRR && m1 == n1 && m2 == n2)
                CHECK(e.variance == 0.0);  // both arms saturated
            else
                CHECK(e.variance > 0.0);
        }
    }
}

TEST_CASE("convert_bin") {
    const auto data = io::load_dataset("cisapride");
    const auto& b = std::get<BinaryStudySet>(data);
    REQUIRE(b.size() == 13);
    const StudySet s = convert_bin(b, EffectType::logOR);
    CHECK(s.size() == 13);
    CHECK(s.label(0) == "Creytens");
    CHECK(s.y()[0] == Approx(2.0989).epsilon(5e-5));
    CHECK(s.variances()[0] == Approx(0.9698).epsilon(5e-5));

    BinaryStudySet bad{{5}, {4}, {1}, {4}, {}};
    CHECK_THROWS_AS(convert_bin(bad, EffectType::RD), DomainError);
    BinaryStudySet saturated{{3, 2}, {3, 5}, {4, 1}, {4, 5}, {}};
    CHECK_THROWS_AS(convert_bin(saturated, EffectType::logRR), DomainError);
    CHECK_NOTHROW(convert_bin(saturated, EffectType::logOR));
}

TEST_CASE("effect type names") {
    CHECK(parse_effect_type("logRR") == EffectType::logRR);
    CHECK_FALSE(parse_effect_type("OR"));
}
