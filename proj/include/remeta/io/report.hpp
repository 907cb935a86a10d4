#pragma once

#include "remeta/error.hpp"
#include "remeta/heterogeneity.hpp"
#include "remeta/intervals.hpp"

#include <json.hpp>

#include <string>

namespace remeta::io {

/// Fixed-point formatting that never prints a negative zero.
std::string format_fixed(double value, int decimals);

/// Console block: method lines, number of studies, the interval blocks that
/// are present, and the heterogeneity measures.
std::string render_text(const IntervalResult& r);

/// Keys K, muhat, lpi, upi, lci, uci, nup, nuc, tau2h, i2h (absent limits
/// are null), followed by method metadata. Key order is stable.
nlohmann::ordered_json to_json(const IntervalResult& r);

struct Tau2Report {
    HeterogeneityEstimate estimate;
    double i2 = 0.0;
    std::size_t k = 0;
};

std::string render_text(const Tau2Report& r);
nlohmann::ordered_json to_json(const Tau2Report& r);

nlohmann::ordered_json error_json(const Error& e);

}  // namespace remeta::io
