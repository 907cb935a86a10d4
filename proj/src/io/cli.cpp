#include "remeta/io/cli.hpp"

#include "remeta/error.hpp"
#include "remeta/io/csv.hpp"
#include "remeta/io/datasets.hpp"
#include "remeta/io/forest_svg.hpp"
#include "remeta/io/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace remeta::io {

namespace {

StudySet load_studies(const RunSpec& spec) {
    if (spec.input.empty() == spec.dataset.empty())
        throw DomainError("specify exactly one of --input or --data");
    const StudyData data = spec.input.empty() ? load_dataset(spec.dataset) : parse_csv(spec.input);
    if (const auto* b = std::get_if<BinaryStudySet>(&data)) return convert_bin(*b, spec.effect);
    return std::get<StudySet>(data);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::numerical:
        case ErrorCode::range: return kExitNumerical;
        default: return kExitData;
    }
}

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntervalResult compute_interval(const RunSpec& spec, const StudySet& s, bool prediction) {
    const std::string name = spec.method.empty() ? "boot" : spec.method;
    const auto method = parse_interval_method(name);
    if (!method) throw UsageError("unknown method '" + name + "'");
    if (prediction) {
        switch (*method) {
            case IntervalMethod::boot: return pi_nnf(s, spec.bootstrap, spec.alpha);
            case IntervalMethod::HTS: return pi_hts(s, spec.alpha);
            case IntervalMethod::APX: return pi_pr(s, VarianceMethod::APX, spec.alpha, spec.reml);
            case IntervalMethod::HK: return pi_pr(s, VarianceMethod::HK, spec.alpha, spec.reml);
            case IntervalMethod::SJ: return pi_pr(s, VarianceMethod::SJ, spec.alpha, spec.reml);
            case IntervalMethod::KR: return pi_pr(s, VarianceMethod::KR, spec.alpha, spec.reml);
            case IntervalMethod::DL:
                throw UsageError("method DL is a confidence-interval method; use boot, HTS, APX, HK, SJ or KR");
        }
    }
    switch (*method) {
        case IntervalMethod::boot: return ci_boot(s, spec.bootstrap, spec.alpha);
        case IntervalMethod::HTS:
            throw UsageError("method HTS is a prediction-interval method; use boot, DL, APX, HK, SJ or KR");
        default: return ci_wald(s, *method, spec.alpha, spec.reml);
    }
}

void emit(const RunSpec& spec, std::ostream& out, const std::string& text) {
    if (spec.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(spec.output, std::ios::binary);
    if (!file) throw IoError("cannot open " + spec.output + " for writing");
    file << text;
    if (!file) throw IoError("failed writing " + spec.output);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
}

int execute(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    const bool json = spec.format == OutputFormat::json;
    switch (spec.command) {
        case Command::pi:
        case Command::ci: {
            if (spec.format == OutputFormat::svg) throw UsageError("svg output is produced by the plot command");
            const StudySet s = load_studies(spec);
            const IntervalResult r = compute_interval(spec, s, spec.command == Command::pi);
            print_warnings(r.warnings, err);
            emit(spec, out, json ? to_json(r).dump(2) + "\n" : render_text(r));
            return kExitOk;
        }
        case Command::plot: {
            const StudySet s = load_studies(spec);
            const IntervalResult r = compute_interval(spec, s, true);
            print_warnings(r.warnings, err);
            ForestOptions opt;
            opt.digits = spec.digits;
            emit(spec, out, forest_svg(s, r, opt));
            return kExitOk;
        }
        case Command::tau2: {
            if (spec.format == OutputFormat::svg) throw UsageError("svg output is produced by the plot command");
            const StudySet s = load_studies(spec);
            const std::string name = spec.method.empty() ? "DL" : spec.method;
            Tau2Report rep;
            rep.k = s.size();
            if (name == "DL") {
                rep.estimate = tau2_dl(s);
            } else if (name == "UDL") {
                rep.estimate = tau2_dl(s);
                rep.estimate.method = Tau2Method::UDL;
                rep.estimate.tau2 = tau2_udl(s);
            } else if (name == "REML") {
                rep.estimate = tau2_reml(s, spec.reml);
            } else {
                throw UsageError("unknown heterogeneity method '" + name + "' (use DL, UDL or REML)");
            }
            rep.i2 = i_squared(s, std::max(0.0, rep.estimate.tau2));
            if (!rep.estimate.warning.empty()) print_warnings({rep.estimate.warning}, err);
            emit(spec, out, json ? to_json(rep).dump(2) + "\n" : render_text(rep));
            return kExitOk;
        }
        case Command::convert: {
            if (spec.format == OutputFormat::svg) throw UsageError("svg output is produced by the plot command");
            const StudySet s = load_studies(spec);
            if (json) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (std::size_t k = 0; k < s.size(); ++k) {
                    nlohmann::ordered_json row;
                    row["y"] = s.y()[k];
                    row["se"] = s.sigma()[k];
                    row["label"] = s.label(k);
                    j.push_back(row);
                }
                emit(spec, out, j.dump(2) + "\n");
            } else {
                std::ostringstream csv;
                write_csv(csv, s);
                emit(spec, out, csv.str());
            }
            return kExitOk;
        }
    }
    return kExitOk;
}

void report_error(const RunSpec& spec, std::ostream& out, std::ostream& err, const Error& e) {
    if (spec.format == OutputFormat::json)
        out << error_json(e).dump(2) << "\n";
    else
        err << "error: " << e.what() << "\n";
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        return execute(spec, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        report_error(spec, out, err, e);
        return exit_code_for(e.code());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prediction and confidence intervals for random-effects meta-analysis"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string format = "text";
    std::string effect = "logOR";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;

    auto add_data_options = [&](CLI::App* sub) {
        auto* input = sub->add_option("--input,-i", spec.input, "CSV file with y,se|v[,label] or m1,n1,m2,n2[,label]");
        auto* data = sub->add_option("--data,-d", spec.dataset, "bundled data set: sbp, cisapride");
        input->excludes(data);
        sub->add_option("--type", effect, "effect measure for binary data: logOR, logRR, RD")
            ->check(CLI::IsMember({"logOR", "logRR", "RD"}));
        sub->add_option("--format,-f", format, "output format: text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output,-o", spec.output, "write the report to this file");
    };
    auto add_interval_options = [&](CLI::App* sub) {
        sub->add_option("--method,-m", spec.method, "calculation method");
        sub->add_option("--alpha", spec.alpha, "alpha level")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--B", spec.bootstrap.b, "number of bootstrap samples")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "random seed for the bootstrap");
        sub->add_option("--threads,--parallel", threads, "worker threads for the bootstrap (1 = off)");
        sub->add_option("--maxit1", spec.bootstrap.cdf.maxit1, "maximum series terms for F_Q")->check(CLI::Range(2, 100000000));
        sub->add_option("--eps", spec.bootstrap.cdf.eps, "absolute accuracy of F_Q")->check(CLI::PositiveNumber);
        sub->add_option("--lower", spec.bootstrap.inversion.lower, "lower limit of tau2 draws")->check(CLI::NonNegativeNumber);
        sub->add_option("--upper", spec.bootstrap.inversion.upper, "upper limit of tau2 draws")->check(CLI::PositiveNumber);
        sub->add_option("--maxit2", spec.bootstrap.inversion.maxit2, "maximum iterations of the numerical inversion")->check(CLI::PositiveNumber);
        sub->add_option("--tol", spec.bootstrap.inversion.tol, "accuracy of the numerical inversion")->check(CLI::PositiveNumber);
        sub->add_option("--maxiter", spec.reml.maxiter, "maximum REML iterations")->check(CLI::PositiveNumber);
    };

    auto* pi = app.add_subcommand("pi", "prediction interval (methods: boot, HTS, APX, HK, SJ, KR)");
    add_data_options(pi);
    add_interval_options(pi);
    auto* ci = app.add_subcommand("ci", "confidence interval (methods: boot, DL, APX, HK, SJ, KR)");
    add_data_options(ci);
    add_interval_options(ci);
    auto* plot = app.add_subcommand("plot", "forest plot as SVG (prediction-interval methods)");
    add_data_options(plot);
    add_interval_options(plot);
    plot->add_option("--digits", spec.digits, "decimals of the annotations")->check(CLI::Range(0, 10));
    auto* tau2 = app.add_subcommand("tau2", "heterogeneity variance (methods: DL, UDL, REML)");
    add_data_options(tau2);
    tau2->add_option("--method,-m", spec.method, "estimator");
    tau2->add_option("--maxiter", spec.reml.maxiter, "maximum REML iterations")->check(CLI::PositiveNumber);
    auto* convert = app.add_subcommand("convert", "convert 2x2 tables to effect sizes and standard errors");
    add_data_options(convert);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (app.got_subcommand(pi)) spec.command = Command::pi;
    else if (app.got_subcommand(ci)) spec.command = Command::ci;
    else if (app.got_subcommand(plot)) spec.command = Command::plot;
    else if (app.got_subcommand(tau2)) spec.command = Command::tau2;
    else spec.command = Command::convert;

    spec.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    if (spec.command == Command::plot) spec.format = OutputFormat::svg;
    spec.effect = *parse_effect_type(effect);
    spec.bootstrap.seed = seed;
    spec.bootstrap.threads = threads;
    if (spec.input.empty() && spec.dataset.empty()) {
        err << "usage error: one of --input or --data is required\n";
        return kExitUsage;
    }
    return run(spec, out, err);
}

}  // namespace remeta::io
