#pragma once

#include "remeta/conversion.hpp"
#include "remeta/heterogeneity.hpp"
#include "remeta/intervals.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace remeta::io {

enum class Command { pi, ci, tau2, convert, plot };
enum class OutputFormat { text, json, svg };

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitNumerical = 4 };

struct RunSpec {
    Command command = Command::pi;
    std::string input;    // CSV path; empty when `dataset` is used
    std::string dataset;  // bundled data set name
    std::string method;   // empty selects the command's default
    EffectType effect = EffectType::logOR;  // conversion applied to binary input
    double alpha = 0.05;
    BootstrapConfig bootstrap;
    RemlOptions reml;
    OutputFormat format = OutputFormat::text;
    std::string output;  // empty: standard output
    int digits = 2;
};

/// Executes a parsed request. Results go to `out`; warnings and (in text
/// mode) errors go to `err`. Returns one of the ExitCode values.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace remeta::io
