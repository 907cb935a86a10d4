#pragma once

#include "remeta/conversion.hpp"
#include "remeta/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace remeta::io {

/// Comma-separated table with a header row. Fields may be double-quoted
/// ("" escapes a quote); blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

CsvTable read_csv(std::istream& in, std::string_view source = "<input>");

using StudyData = std::variant<StudySet, BinaryStudySet>;

/// Interprets a table as continuous data (y with se or v, optional label)
/// or binary data (m1, n1, m2, n2, optional label).
StudyData parse_studies(std::istream& in, std::string_view source = "<input>");

StudyData parse_csv(const std::filesystem::path& path);

/// Writes y,se[,label] with round-trip precision.
void write_csv(std::ostream& out, const StudySet& s);

}  // namespace remeta::io
