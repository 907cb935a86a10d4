#pragma once

#include "remeta/intervals.hpp"
#include "remeta/model.hpp"

#include <filesystem>
#include <string>

namespace remeta::io {

struct ForestOptions {
    int digits = 2;
    double study_z = 1.959963984540054;  // per-study whiskers: y +- z sigma
    double width = 760.0;
    double row_height = 22.0;
};

/// SVG 1.1 forest plot: one row per study (point and whiskers), a diamond
/// for the confidence interval and a bar for the prediction interval of the
/// average effect. Output is a pure function of the inputs.
std::string forest_svg(const StudySet& s, const IntervalResult& r, const ForestOptions& opt = {});

/// Writes forest_svg(...) to `path`; throws IoError if the file cannot be written.
void write_forest_svg(const StudySet& s, const IntervalResult& r, const std::filesystem::path& path,
                      const ForestOptions& opt = {});

}  // namespace remeta::io
