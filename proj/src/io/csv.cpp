#include "remeta/io/csv.hpp"

#include "remeta/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

namespace remeta::io {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::vector<std::string> split_line(std::string_view line, std::string_view source, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? field : trim(field));
            field.clear();
            was_quoted = false;
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw ParseError(where(source, lineno) + "unterminated quoted field");
    fields.push_back(was_quoted ? field : trim(field));
    return fields;
}

double parse_double(const std::string& text, std::string_view column, std::string_view source,
                    std::size_t line) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ParseError(where(source, line) + "column '" + std::string(column) +
                         "' is not a finite number: '" + text + "'");
    return value;
}

long parse_count(const std::string& text, std::string_view column, std::string_view source,
                 std::size_t line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(where(source, line) + "column '" + std::string(column) +
                         "' is not an integer: '" + text + "'");
    return value;
}

}  // namespace

CsvTable read_csv(std::istream& in, std::string_view source) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split_line(line, source, lineno);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError(where(source, lineno) + "expected " + std::to_string(table.header.size()) +
                             " fields, found " + std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(lineno);
    }
    if (!have_header) throw ParseError(std::string(source) + ": empty file (a header row is required)");
    return table;
}

StudyData parse_studies(std::istream& in, std::string_view source) {
    const CsvTable table = read_csv(in, source);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (!column.emplace(table.header[i], i).second)
            throw ParseError(std::string(source) + ": duplicate column '" + table.header[i] + "'");
    }
    auto find = [&](const char* name) -> std::optional<std::size_t> {
        const auto it = column.find(name);
        if (it == column.end()) return std::nullopt;
        return it->second;
    };
    if (table.rows.empty()) throw ParseError(std::string(source) + ": no data rows");
    const auto label_col = find("label");

    const bool binary = find("m1") || find("n1") || find("m2") || find("n2");
    if (binary) {
        BinaryStudySet b;
        const char* names[] = {"m1", "n1", "m2", "n2"};
        std::vector<long>* targets[] = {&b.m1, &b.n1, &b.m2, &b.n2};
        std::size_t idx[4];
        for (int j = 0; j < 4; ++j) {
            const auto c = find(names[j]);
            if (!c) throw ParseError(std::string(source) + ": missing column '" + names[j] + "'");
            idx[j] = *c;
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            const std::size_t line = table.line_numbers[r];
            for (int j = 0; j < 4; ++j) targets[j]->push_back(parse_count(row[idx[j]], names[j], source, line));
            if (b.m1.back() < 0 || b.m2.back() < 0 || b.n1.back() < 1 || b.n2.back() < 1)
                throw ParseError(where(source, line) + "counts must satisfy m >= 0 and n >= 1");
            if (b.m1.back() > b.n1.back() || b.m2.back() > b.n2.back())
                throw ParseError(where(source, line) + "number of events m exceeds number of patients n");
            if (label_col) b.labels.push_back(row[*label_col]);
        }
        return b;
    }

    const auto y_col = find("y");
    if (!y_col) throw ParseError(std::string(source) + ": missing column 'y'");
    const auto se_col = find("se");
    const auto v_col = find("v");
    if (se_col && v_col) throw ParseError(std::string(source) + ": specify exactly one of 'se' or 'v'");
    if (!se_col && !v_col) throw ParseError(std::string(source) + ": missing column 'se' or 'v'");

    std::vector<double> y;
    std::vector<double> spread;
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.line_numbers[r];
        y.push_back(parse_double(row[*y_col], "y", source, line));
        const char* name = se_col ? "se" : "v";
        const double value = parse_double(row[se_col ? *se_col : *v_col], name, source, line);
        if (!(value > 0.0)) throw ParseError(where(source, line) + "column '" + name + "' must be > 0");
        spread.push_back(value);
        if (label_col) labels.push_back(row[*label_col]);
    }
    if (se_col) return StudySet(std::move(y), std::move(spread), std::move(labels));
    return StudySet::from_variances(std::move(y), spread, std::move(labels));
}

StudyData parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_studies(in, path.string());
}

void write_csv(std::ostream& out, const StudySet& s) {
    out << (s.has_labels() ? "y,se,label\n" : "y,se\n");
    char buf[64];
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", s.y()[k]);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", s.sigma()[k]);
        out << buf;
        if (s.has_labels()) {
            std::string quoted = "\"";
            for (char c : s.labels()[k]) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            out << ',' << quoted << '"';
        }
        out << '\n';
    }
}

}  // namespace remeta::io
