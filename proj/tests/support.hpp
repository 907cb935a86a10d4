#pragma once

#include "remeta/io/datasets.hpp"
#include "remeta/model.hpp"

#include <cmath>
#include <random>
#include <variant>
#include <vector>

namespace remeta::testing {

inline StudySet sbp() { return std::get<StudySet>(io::load_dataset("sbp")); }

inline const std::vector<double>& sbp_y() {
    static const std::vector<double> y{0.00, 0.10, -0.40, -0.80, -0.63, 0.22, -0.34, -0.51, 0.03, -0.81};
    return y;
}

inline const std::vector<double>& sbp_se() {
    static const std::vector<double> se{0.42347717, 0.21939179, 0.02551067, 0.19898325, 0.30102594,
                                        0.30102594, 0.07142988, 0.10204269, 0.12245123, 0.30102594};
    return se;
}

// Random-effects data: y_k ~ N(mu, sigma_k^2 + tau2), sigma_k ~ U(lo, hi).
inline StudySet random_set(std::mt19937_64& rng, std::size_t K, double tau2 = 0.05, double lo = 0.1,
                           double hi = 0.6, double mu = 0.0) {
    std::uniform_real_distribution<double> us(lo, hi);
    std::normal_distribution<double> z;
    std::vector<double> y(K), se(K);
    for (std::size_t k = 0; k < K; ++k) {
        se[k] = us(rng);
        y[k] = mu + z(rng) * std::sqrt(se[k] * se[k] + tau2);
    }
    return StudySet(std::move(y), std::move(se));
}

inline StudySet transform(const StudySet& s, double shift, double scale) {
    std::vector<double> y(s.y().begin(), s.y().end()), se(s.sigma().begin(), s.sigma().end());
    for (auto& v : y) v = v * scale + shift;
    for (auto& v : se) v *= scale;
    return StudySet(std::move(y), std::move(se), s.labels());
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 1e-300) {
    return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), abs_floor});
}

}  // namespace remeta::testing
