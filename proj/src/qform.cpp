#include "remeta/qform.hpp"

#include "remeta/error.hpp"
#include "remeta/parallel.hpp"
#include "remeta/simd/kernels.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace remeta {

QFormSpec QFormSpec::from_studies(const StudySet& s) {
    const std::size_t K = s.size();
    if (K < 2) throw DomainError("the distribution of Q needs at least 2 studies");
    QFormSpec spec;
    spec.sigma2.assign(s.variances().begin(), s.variances().end());
    spec.v.resize(K);
    for (std::size_t k = 0; k < K; ++k) spec.v[k] = 1.0 / spec.sigma2[k];
    spec.v_total = order_invariant_sum(spec.v);
    spec.a_matrix = SymmetricMatrix(K);
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) {
            const double outer = spec.v[i] * spec.v[j] / spec.v_total;
            spec.a_matrix(i, j) = (i == j ? spec.v[i] : 0.0) - outer;
        }
    }
    return spec;
}

SymmetricMatrix s_matrix(const QFormSpec& spec, double tau2) {
    if (!(tau2 >= 0.0) || !std::isfinite(tau2)) throw DomainError("tau2 must be finite and >= 0");
    const std::size_t K = spec.size();
    std::vector<double> root(K);
    for (std::size_t k = 0; k < K; ++k) root[k] = std::sqrt(spec.sigma2[k] + tau2);
    SymmetricMatrix S(K);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) S(i, j) = root[i] * spec.a_matrix(i, j) * root[j];
    return S;
}

QSpectrum spectrum(const QFormSpec& spec, double tau2) {
    QSpectrum out;
    out.tau2 = tau2;
    out.lambda = symmetric_eigenvalues(s_matrix(spec, tau2));
    for (double& l : out.lambda) {
        if (l < 0.0) {
            if (l < -kNegativeEigenvalueTolerance) {
                std::ostringstream msg;
                msg << "matrix S is not positive semi-definite at tau2 = " << tau2
                    << " (eigenvalue " << l << ")";
                throw NumericalError(msg.str());
            }
            l = 0.0;
        }
    }
    return out;
}

double q_cdf(std::span<const double> lambda, double q, const QCdfOptions& opt) {
    if (std::isnan(q)) throw DomainError("q must not be NaN");
    if (!(opt.eps > 0.0)) throw DomainError("eps must be > 0");
    if (opt.maxit1 < 1) throw DomainError("maxit1 must be >= 1");

    double lmax = 0.0;
    for (double l : lambda) {
        if (l < 0.0 || !std::isfinite(l)) throw DomainError("eigenvalues must be finite and >= 0");
        lmax = std::max(lmax, l);
    }
    if (q < 0.0) return 0.0;
    if (lmax == 0.0) return 1.0;  // Q is identically zero
    if (q == 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;

    std::vector<double> active;
    for (double l : lambda)
        if (l > kNegligibleEigenvalueRatio * lmax) active.push_back(l);
    const double m = static_cast<double>(active.size());
    const double beta = *std::min_element(active.begin(), active.end());

    // Ruben's series: F(q) = sum_k a_k Pr(chi^2_{m+2k} <= q / beta), with
    // a_0 = prod (beta/lambda)^{1/2}, g_k = 1/2 sum gamma_j^k, gamma_j = 1 - beta/lambda_j and
    // a_k = (1/k) sum_{r<k} g_{k-r} a_r. All a_k >= 0 and sum to one, and the
    // chi-square probabilities decrease in k, so the remainder after term k is
    // bounded by (1 - sum_{j<=k} a_j) Pr(chi^2_{m+2k+2} <= q / beta).
    std::vector<double> gamma(active.size());
    std::vector<double> powers(active.size(), 1.0);
    double log_a0 = 0.0;
    for (std::size_t j = 0; j < active.size(); ++j) {
        gamma[j] = 1.0 - beta / active[j];
        log_a0 += 0.5 * std::log(beta / active[j]);
    }

    const double half_x = 0.5 * q / beta;
    const double log_half_x = std::log(half_x);
    const std::size_t cap = static_cast<std::size_t>(opt.maxit1) + 1;
    std::vector<double> g(cap + 1, 0.0);        // g[k], k >= 1
    std::vector<double> a_reversed(cap, 0.0);   // a_r stored at cap - 1 - r

    // values are carried relative to exp(log_scale) so that a_0 may underflow
    double log_scale = 0.0;
    double a0 = std::exp(log_a0);
    if (log_a0 < -600.0) {
        log_scale = log_a0;
        a0 = 1.0;
    }
    a_reversed[cap - 1] = a0;

    double prob = boost::math::gamma_p(0.5 * m, half_x);  // Pr(chi^2_m <= x)
    double total = a0 * prob;
    double mass = a0;
    auto next_prob = [&](double current, std::size_t k) {
        // Pr(chi^2_{n+2} <= x) = Pr(chi^2_n <= x) - (x/2)^{n/2} e^{-x/2} / Gamma(n/2 + 1), n = m + 2k
        const double shape = 0.5 * m + static_cast<double>(k);
        const double term = std::exp(shape * log_half_x - half_x - std::lgamma(shape + 1.0));
        return std::max(0.0, current - term);
    };
    prob = next_prob(prob, 0);

    for (std::size_t k = 1;; ++k) {
        const double scale = std::exp(log_scale);
        const double remaining = std::max(0.0, 1.0 - mass * scale);
        const double bound = remaining * prob;
        if (bound < opt.eps) break;
        if (k >= cap) {
            std::ostringstream msg;
            msg << "F_Q series did not reach eps = " << opt.eps << " within maxit1 = " << opt.maxit1
                << " terms (error bound achieved: " << bound << ")";
            throw NumericalError(msg.str());
        }
        g[k] = 0.5 * simd::scale_and_sum(powers, gamma);
        const double ak =
            simd::dot(std::span<const double>(g.data() + 1, k),
                      std::span<const double>(a_reversed.data() + (cap - k), k)) /
            static_cast<double>(k);
        a_reversed[cap - 1 - k] = ak;
        total += ak * prob;
        mass += ak;
        if (ak > 1e200) {
            for (std::size_t r = 0; r <= k; ++r) a_reversed[cap - 1 - r] *= 1e-200;
            total *= 1e-200;
            mass *= 1e-200;
            log_scale += 200.0 * std::log(10.0);
        }
        prob = next_prob(prob, k);
    }
    return std::clamp(total * std::exp(log_scale), 0.0, 1.0);
}

double h_function(const QFormSpec& spec, double q_obs, double tau2, const QCdfOptions& opt) {
    if (!(q_obs >= 0.0)) throw DomainError("q_obs must be >= 0");
    return 1.0 - q_cdf(spectrum(spec, tau2), q_obs, opt);
}

ConfidenceDistribution::ConfidenceDistribution(QFormSpec spec, double q_obs, QCdfOptions cdf,
                                               InversionOptions inv)
    : spec_(std::move(spec)), q_obs_(q_obs), cdf_(cdf), inv_(inv) {
    if (!(q_obs_ >= 0.0) || !std::isfinite(q_obs_)) throw DomainError("q_obs must be finite and >= 0");
    if (!(inv_.lower >= 0.0)) throw DomainError("lower must be >= 0");
    if (!(inv_.upper > inv_.lower) || !std::isfinite(inv_.upper))
        throw DomainError("upper must be finite and greater than lower");
    if (inv_.maxit2 < 1) throw DomainError("maxit2 must be > 0");
    if (!(inv_.tol > 0.0)) throw DomainError("tol must be > 0");
}

double ConfidenceDistribution::h(double tau2) const { return h_function(spec_, q_obs_, tau2, cdf_); }

double ConfidenceDistribution::quantile(double u) const {
    const double v[1] = {u};
    return quantiles(v, 1).front();
}

namespace {

struct Bracket {
    double lo, hi, h_lo, h_hi;
    int iterations = 0;
    bool done = false;
    double result = 0.0;
};

double interpolate(const Bracket& b, double u) {
    if (!(b.h_hi > b.h_lo)) return b.lo + 0.5 * (b.hi - b.lo);
    const double t = std::clamp((u - b.h_lo) / (b.h_hi - b.h_lo), 0.0, 1.0);
    return std::clamp(b.lo + t * (b.hi - b.lo), b.lo, b.hi);
}

}  // namespace

std::vector<double> ConfidenceDistribution::quantiles(std::span<const double> u, unsigned threads) const {
    for (double x : u)
        if (!(x > 0.0 && x < 1.0)) throw DomainError("u must lie in (0, 1)");
    std::vector<double> out(u.size(), 0.0);
    if (u.empty()) return out;

    const double h_lower = h(inv_.lower);
    double h_upper = std::numeric_limits<double>::quiet_NaN();
    std::unordered_map<double, double> cache;
    cache.emplace(inv_.lower, h_lower);

    std::vector<Bracket> state(u.size());
    bool any_active = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (h_lower > u[i]) {
            state[i].done = true;
            state[i].result = 0.0;
            continue;
        }
        if (std::isnan(h_upper)) {
            h_upper = h(inv_.upper);
            cache.emplace(inv_.upper, h_upper);
        }
        if (h_upper < u[i]) {
            std::ostringstream msg;
            msg << "H(upper) = " << h_upper << " < u = " << u[i] << ": the root is not bracketed by ["
                << inv_.lower << ", " << inv_.upper << "]; increase upper";
            throw RangeError(msg.str());
        }
        state[i] = Bracket{inv_.lower, inv_.upper, h_lower, h_upper};
        any_active = true;
    }

    std::vector<double> pending;
    while (any_active) {
        pending.clear();
        for (std::size_t i = 0; i < u.size(); ++i) {
            Bracket& b = state[i];
            if (b.done) continue;
            if (b.hi - b.lo <= inv_.tol) {
                b.done = true;
                b.result = interpolate(b, u[i]);
                continue;
            }
            if (b.iterations >= inv_.maxit2) {
                std::ostringstream msg;
                msg << "inversion of H did not reach tol = " << inv_.tol << " within maxit2 = "
                    << inv_.maxit2 << " iterations (bracket width " << (b.hi - b.lo) << ")";
                throw NumericalError(msg.str());
            }
            const double mid = b.lo + 0.5 * (b.hi - b.lo);
            if (!cache.contains(mid)) pending.push_back(mid);
        }
        if (!pending.empty()) {
            std::sort(pending.begin(), pending.end());
            pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
            std::vector<double> values(pending.size());
            parallel_for(pending.size(), threads, [&](std::size_t j) { values[j] = h(pending[j]); });
            for (std::size_t j = 0; j < pending.size(); ++j) cache.emplace(pending[j], values[j]);
        }
        any_active = false;
        for (std::size_t i = 0; i < u.size(); ++i) {
            Bracket& b = state[i];
            if (b.done) continue;
            const double mid = b.lo + 0.5 * (b.hi - b.lo);
            const double hm = cache.at(mid);
            if (hm < u[i]) {
                b.lo = mid;
                b.h_lo = hm;
            } else {
                b.hi = mid;
                b.h_hi = hm;
            }
            ++b.iterations;
            any_active = true;
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = state[i].result;
    return out;
}

double h_inverse(const QFormSpec& spec, double q_obs, double u, const InversionOptions& inv,
                 const QCdfOptions& cdf) {
    return ConfidenceDistribution(spec, q_obs, cdf, inv).quantile(u);
}

double sample_tau2(const ConfidenceDistribution& dist, RandomStream& stream) {
    return dist.quantile(stream.uniform());
}

}  // namespace remeta
