#include "remeta/error.hpp"
#include "remeta/intervals.hpp"
#include "remeta/parallel.hpp"
#include "remeta/random.hpp"
#include "remeta/simd/kernels.hpp"

#include <cmath>
#include <random>

namespace remeta {

namespace {

void validate(const StudySet& s, const BootstrapConfig& cfg) {
    if (s.size() < 3)
        throw DomainError("the bootstrap interval requires K >= 3 studies (got K = " +
                          std::to_string(s.size()) + ")");
    if (cfg.b == 0) throw DomainError("B must be > 0");
    if (cfg.rnd) {
        if (cfg.rnd->size() != cfg.b)
            throw DomainError("rnd must hold exactly B = " + std::to_string(cfg.b) + " values");
        for (double t : *cfg.rnd)
            if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("rnd values must be finite and >= 0");
    }
}

}  // namespace

BootstrapSamples bootstrap_samples(const StudySet& s, const BootstrapConfig& cfg) {
    validate(s, cfg);
    const std::size_t B = cfg.b;
    const std::size_t K = s.size();
    const double t_df = static_cast<double>(K - 1);

    BootstrapSamples out;
    out.seed = cfg.seed ? *cfg.seed : std::random_device{}();

    // uniforms for tau2, normals, and t variates; three uniforms per draw, in that order
    std::vector<double> u(B), z(B), t(B);
    const std::size_t blocks = (B + kBootstrapBlockSize - 1) / kBootstrapBlockSize;
    parallel_for(blocks, cfg.threads, [&](std::size_t block) {
        RandomStream stream(out.seed, block);
        const std::size_t begin = block * kBootstrapBlockSize;
        const std::size_t end = std::min(B, begin + kBootstrapBlockSize);
        for (std::size_t b = begin; b < end; ++b) {
            u[b] = stream.uniform();
            z[b] = stream.normal();
            t[b] = stream.student_t(t_df);
        }
    });

    if (cfg.rnd) {
        out.tau2 = *cfg.rnd;
    } else {
        const ConfidenceDistribution dist(QFormSpec::from_studies(s), q_statistic(s).q_obs, cfg.cdf,
                                          cfg.inversion);
        out.tau2 = dist.quantiles(u, cfg.threads);
    }

    out.theta.resize(B);
    out.centre.resize(B);
    parallel_for(blocks, cfg.threads, [&](std::size_t block) {
        const std::size_t begin = block * kBootstrapBlockSize;
        const std::size_t n = std::min(B, begin + kBootstrapBlockSize) - begin;
        std::vector<double> mu(n), var_hk(n);
        simd::pooled_moments(std::span<const double>(out.tau2).subspan(begin, n), s.y(), s.variances(),
                             mu, var_hk);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t b = begin + i;
            const double hk_term = t[b] * std::sqrt(var_hk[i]);
            out.centre[b] = mu[i] - hk_term;
            out.theta[b] = mu[i] + z[b] * std::sqrt(out.tau2[b]) - hk_term;
        }
    });
    return out;
}

namespace {

IntervalResult bootstrap_result(const StudySet& s, const BootstrapConfig& cfg, double alpha,
                                bool with_prediction) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    const BootstrapSamples draws = bootstrap_samples(s, cfg);
    const HeterogeneityEstimate dl = tau2_dl(s);
    const double df = static_cast<double>(s.size() - 1);

    IntervalResult r;
    r.k = s.size();
    r.muhat = pooled_mean(s, weights(s, dl.tau2));
    r.method = IntervalMethod::boot;
    r.tau2_method = Tau2Method::DL;
    r.variance_method = VarianceMethod::HK;
    r.alpha = alpha;
    r.b_used = cfg.b;
    r.seed = draws.seed;
    if (with_prediction)
        r.prediction = Limits{percentile(draws.theta, alpha / 2.0), percentile(draws.theta, 1.0 - alpha / 2.0), df};
    r.confidence = Limits{percentile(draws.centre, alpha / 2.0), percentile(draws.centre, 1.0 - alpha / 2.0), df};
    r.tau2h = dl.tau2;
    r.i2h = i_squared(s, dl.tau2);
    if (cfg.b < 1000)
        r.warnings.push_back("B = " + std::to_string(cfg.b) +
                             " bootstrap samples is small; Monte Carlo error may be large");
    return r;
}

}  // namespace

IntervalResult pi_nnf(const StudySet& s, const BootstrapConfig& cfg, double alpha) {
    return bootstrap_result(s, cfg, alpha, true);
}

IntervalResult ci_boot(const StudySet& s, const BootstrapConfig& cfg, double alpha) {
    return bootstrap_result(s, cfg, alpha, false);
}

}  // namespace remeta
