#include "remeta/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace remeta::io {

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

namespace {

std::string format_df(double df) {
    if (std::abs(df - std::round(df)) < 1e-9) return std::to_string(static_cast<long long>(std::round(df)));
    return format_fixed(df, 4);
}

std::string level(double alpha) {
    std::string s = format_fixed(100.0 * (1.0 - alpha), 2);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

std::string variance_label(VarianceMethod m) {
    switch (m) {
        case VarianceMethod::APX: return "approximate";
        case VarianceMethod::HK: return "Hartung (Hartung-Knapp)";
        case VarianceMethod::SJ: return "Sidik-Jonkman";
        case VarianceMethod::KR: return "Kenward-Roger";
    }
    return "?";
}

std::string tau2_label(Tau2Method m) {
    switch (m) {
        case Tau2Method::DL: return "DerSimonian-Laird";
        case Tau2Method::UDL: return "untruncated DerSimonian-Laird";
        case Tau2Method::REML: return "REML";
    }
    return "?";
}

std::string method_line(const IntervalResult& r) {
    const bool pi = r.prediction.has_value();
    switch (r.method) {
        case IntervalMethod::boot:
            return pi ? "A parametric bootstrap prediction and confidence intervals"
                      : "A parametric bootstrap confidence interval";
        case IntervalMethod::HTS: return "Higgins-Thompson-Spiegelhalter prediction interval";
        case IntervalMethod::DL: return "A Wald-type t-distribution confidence interval";
        default:
            return pi ? "Partlett-Riley prediction interval" : "A Wald-type t-distribution confidence interval";
    }
}

void limits_block(std::ostringstream& out, const char* kind, double alpha, double muhat, const Limits& l) {
    out << "Average treatment effect [" << level(alpha) << "% " << kind << " interval]:\n"
        << format_fixed(muhat, 4) << " [" << format_fixed(l.lower, 4) << ", " << format_fixed(l.upper, 4)
        << "]\n"
        << "d.f.: " << format_df(l.df) << "\n";
}

}  // namespace

std::string render_text(const IntervalResult& r) {
    std::ostringstream out;
    out << (r.prediction ? "Prediction & Confidence Intervals for Random-Effects Meta-Analysis\n"
                         : "Confidence Interval for Random-Effects Meta-Analysis\n")
        << "\n"
        << method_line(r) << "\n"
        << "Heterogeneity variance: " << tau2_label(r.tau2_method) << "\n"
        << "Variance for average treatment effect: " << variance_label(r.variance_method) << "\n"
        << "\n"
        << "No. of studies: " << r.k << "\n"
        << "\n";
    if (r.prediction) {
        limits_block(out, "prediction", r.alpha, r.muhat, *r.prediction);
        out << "\n";
    }
    if (r.confidence) {
        limits_block(out, "confidence", r.alpha, r.muhat, *r.confidence);
        out << "\n";
    }
    out << "Heterogeneity measure\n"
        << "tau-squared: " << format_fixed(r.tau2h, 4) << "\n"
        << "I-squared:  " << format_fixed(r.i2h, 1) << "%\n";
    return out.str();
}

nlohmann::ordered_json to_json(const IntervalResult& r) {
    nlohmann::ordered_json j;
    auto opt = [](const std::optional<Limits>& l, double Limits::*field) -> nlohmann::ordered_json {
        if (!l) return nullptr;
        return (*l).*field;
    };
    j["K"] = r.k;
    j["muhat"] = r.muhat;
    j["lpi"] = opt(r.prediction, &Limits::lower);
    j["upi"] = opt(r.prediction, &Limits::upper);
    j["lci"] = opt(r.confidence, &Limits::lower);
    j["uci"] = opt(r.confidence, &Limits::upper);
    j["nup"] = opt(r.prediction, &Limits::df);
    j["nuc"] = opt(r.confidence, &Limits::df);
    j["tau2h"] = r.tau2h;
    j["i2h"] = r.i2h;
    j["method"] = to_string(r.method);
    j["tau2_method"] = to_string(r.tau2_method);
    j["variance_method"] = to_string(r.variance_method);
    j["alpha"] = r.alpha;
    j["B"] = r.b_used ? nlohmann::ordered_json(*r.b_used) : nlohmann::ordered_json(nullptr);
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

std::string render_text(const Tau2Report& r) {
    std::ostringstream out;
    out << "Heterogeneity variance: " << tau2_label(r.estimate.method) << "\n"
        << "\n"
        << "No. of studies: " << r.k << "\n"
        << "Q statistic: " << format_fixed(r.estimate.q_obs, 4) << "\n";
    if (r.estimate.method == Tau2Method::REML)
        out << "Iterations: " << r.estimate.iterations << (r.estimate.converged ? "" : " (not converged)")
            << "\n";
    out << "\n"
        << "Heterogeneity measure\n"
        << "tau-squared: " << format_fixed(r.estimate.tau2, 4) << "\n"
        << "I-squared:  " << format_fixed(r.i2, 1) << "%\n";
    return out.str();
}

nlohmann::ordered_json to_json(const Tau2Report& r) {
    nlohmann::ordered_json j;
    j["K"] = r.k;
    j["tau2h"] = r.estimate.tau2;
    j["i2h"] = r.i2;
    j["method"] = to_string(r.estimate.method);
    j["q_obs"] = r.estimate.q_obs;
    j["iterations"] = r.estimate.iterations;
    j["converged"] = r.estimate.converged;
    j["warnings"] = nlohmann::ordered_json::array();
    if (!r.estimate.warning.empty()) j["warnings"].push_back(r.estimate.warning);
    return j;
}

nlohmann::ordered_json error_json(const Error& e) {
    nlohmann::ordered_json j;
    j["error"]["code"] = to_string(e.code());
    j["error"]["message"] = e.what();
    return j;
}

}  // namespace remeta::io
