#pragma once

#include "remeta/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remeta {

/// 2x2 tables: m1/n1 events/patients in the treatment arm, m2/n2 in the control arm.
struct BinaryStudySet {
    std::vector<long> m1, n1, m2, n2;
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return m1.size(); }
    /// Throws DomainError unless 0 <= m <= n, n >= 1 and all vectors have equal length.
    void validate() const;
};

enum class EffectType { logOR, logRR, RD };

std::string_view to_string(EffectType t) noexcept;
std::optional<EffectType> parse_effect_type(std::string_view name) noexcept;

/// Effect estimate and its variance for one table.
struct Effect {
    double estimate = 0.0;
    double variance = 0.0;
};

Effect convert_table(long m1, long n1, long m2, long n2, EffectType type);

/// Converts every table; standard errors are the square roots of the variances.
StudySet convert_bin(const BinaryStudySet& b, EffectType type);

}  // namespace remeta
