#pragma once

#include "remeta/distributions.hpp"
#include "remeta/heterogeneity.hpp"
#include "remeta/model.hpp"
#include "remeta/qform.hpp"
#include "remeta/variance.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace remeta {

enum class IntervalMethod {
    boot,  // parametric bootstrap with a confidence distribution for tau2
    HTS,   // plug-in interval with the DL estimator (prediction only)
    DL,    // Wald-type t interval with DL and the approximate variance (confidence only)
    APX,   // REML + approximate variance
    HK,    // REML + Hartung-Knapp variance
    SJ,    // REML + Sidik-Jonkman variance
    KR,    // REML + Kenward-Roger variance and degrees of freedom
};

std::string_view to_string(IntervalMethod m) noexcept;
std::optional<IntervalMethod> parse_interval_method(std::string_view name) noexcept;

struct Limits {
    double lower = 0.0;
    double upper = 0.0;
    double df = 0.0;
};

struct IntervalResult {
    std::size_t k = 0;
    double muhat = 0.0;
    std::optional<Limits> prediction;
    std::optional<Limits> confidence;
    double tau2h = 0.0;
    double i2h = 0.0;
    IntervalMethod method = IntervalMethod::boot;
    Tau2Method tau2_method = Tau2Method::DL;
    VarianceMethod variance_method = VarianceMethod::APX;
    double alpha = 0.05;
    std::optional<std::size_t> b_used;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> warnings;
};

struct BootstrapConfig {
    std::size_t b = 25000;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;  // 0 or 1: single-threaded
    QCdfOptions cdf;
    InversionOptions inversion;
    std::optional<std::vector<double>> rnd;  // precomputed tau2 draws; skips inversion
};

/// Draws per bootstrap block; each block owns one random substream.
inline constexpr std::size_t kBootstrapBlockSize = 1024;

/// Bootstrap draws for one study set. theta holds draws of the effect in a
/// new study and centre holds the same draws without the heterogeneity term.
struct BootstrapSamples {
    std::vector<double> tau2;
    std::vector<double> theta;
    std::vector<double> centre;
    std::uint64_t seed = 0;
};

BootstrapSamples bootstrap_samples(const StudySet& s, const BootstrapConfig& cfg);

/// Type-7 sample quantile: linear interpolation at h = (n - 1) p between order statistics.
double percentile(std::span<const double> samples, double p);

IntervalResult pi_hts(const StudySet& s, double alpha = 0.05);

IntervalResult pi_pr(const StudySet& s, VarianceMethod variant, double alpha = 0.05,
                     const RemlOptions& reml = {});

IntervalResult pi_nnf(const StudySet& s, const BootstrapConfig& cfg = {}, double alpha = 0.05);

/// Wald-type t confidence interval; variant is one of DL, APX, HK, SJ, KR.
IntervalResult ci_wald(const StudySet& s, IntervalMethod variant, double alpha = 0.05,
                       const RemlOptions& reml = {});

/// Bootstrap confidence interval (same draws as pi_nnf, confidence limits only).
IntervalResult ci_boot(const StudySet& s, const BootstrapConfig& cfg = {}, double alpha = 0.05);

}  // namespace remeta
