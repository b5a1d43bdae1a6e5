#pragma once

// The six candidate tail models. Every model is a kernel k(x) on [x_min, inf)
// divided by its tail mass: the integral of k over [x_min, inf) in the
// continuous convention, or the sum over integers >= ceil(x_min) in the
// discrete one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heavytail/errors.hpp"
#include "heavytail/numerics.hpp"
#include "heavytail/random.hpp"

namespace heavytail {

enum class ModelKind { PowerLaw, PowerLawWithCutoff, LogNormal, Exponential, StretchedExponential, Gamma };

inline constexpr std::array<ModelKind, 6> kAllModels{ModelKind::PowerLaw,    ModelKind::PowerLawWithCutoff,
                                                     ModelKind::LogNormal,   ModelKind::Exponential,
                                                     ModelKind::StretchedExponential, ModelKind::Gamma};

enum class Support { Continuous, Discrete };

constexpr int parameter_count(ModelKind kind) {
    return (kind == ModelKind::PowerLaw || kind == ModelKind::Exponential) ? 1 : 2;
}

/// Short column label, as used in output tables.
constexpr std::string_view short_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::PowerLaw: return "PL";
        case ModelKind::PowerLawWithCutoff: return "PLWC";
        case ModelKind::LogNormal: return "LN";
        case ModelKind::Exponential: return "exp";
        case ModelKind::StretchedExponential: return "str_exp";
        case ModelKind::Gamma: return "Gamma";
    }
    return "?";
}

inline std::optional<ModelKind> parse_model_kind(std::string_view name) {
    for (auto kind : kAllModels) {
        if (name == short_name(kind)) return kind;
    }
    if (name == "powerlaw" || name == "power_law") return ModelKind::PowerLaw;
    if (name == "truncated_power_law" || name == "plwc") return ModelKind::PowerLawWithCutoff;
    if (name == "lognormal" || name == "ln") return ModelKind::LogNormal;
    if (name == "exponential" || name == "EXP") return ModelKind::Exponential;
    if (name == "stretched_exponential" || name == "strexp") return ModelKind::StretchedExponential;
    if (name == "gamma") return ModelKind::Gamma;
    return std::nullopt;
}

constexpr std::string_view support_name(Support s) { return s == Support::Continuous ? "continuous" : "discrete"; }

inline std::optional<Support> parse_support(std::string_view name) {
    if (name == "continuous") return Support::Continuous;
    if (name == "discrete") return Support::Discrete;
    return std::nullopt;
}

using Params = std::array<double, 2>;

namespace detail {

inline double log_kernel(ModelKind kind, const Params& p, double x) {
    const double lx = std::log(x);
    switch (kind) {
        case ModelKind::PowerLaw: return -p[0] * lx;
        case ModelKind::PowerLawWithCutoff: return -p[0] * lx - p[1] * x;
        case ModelKind::LogNormal: {
            const double z = lx - p[0];
            return -lx - z * z / (2.0 * p[1] * p[1]);
        }
        case ModelKind::Exponential: return -p[0] * x;
        case ModelKind::StretchedExponential: return (p[1] - 1.0) * lx - p[0] * std::pow(x, p[1]);
        case ModelKind::Gamma: return (p[0] - 1.0) * lx - x / p[1];
    }
    return 0.0;
}

// First three derivatives of ln k at x, for the Euler-Maclaurin remainder.
inline std::array<double, 3> log_kernel_derivatives(ModelKind kind, const Params& p, double x) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    switch (kind) {
        case ModelKind::PowerLaw: return {-p[0] / x, p[0] / x2, -2.0 * p[0] / x3};
        case ModelKind::PowerLawWithCutoff: return {-p[0] / x - p[1], p[0] / x2, -2.0 * p[0] / x3};
        case ModelKind::LogNormal: {
            const double inv_var = 1.0 / (p[1] * p[1]);
            const double h = -1.0 - (std::log(x) - p[0]) * inv_var;
            return {h / x, (-inv_var - h) / x2, (3.0 * inv_var + 2.0 * h) / x3};
        }
        case ModelKind::Exponential: return {-p[0], 0.0, 0.0};
        case ModelKind::StretchedExponential: {
            const double b = p[1];
            const double lb = p[0] * b;
            return {(b - 1.0) / x - lb * std::pow(x, b - 1.0),
                    -(b - 1.0) / x2 - lb * (b - 1.0) * std::pow(x, b - 2.0),
                    2.0 * (b - 1.0) / x3 - lb * (b - 1.0) * (b - 2.0) * std::pow(x, b - 3.0)};
        }
        case ModelKind::Gamma: return {(p[0] - 1.0) / x - 1.0 / p[1], -(p[0] - 1.0) / x2, 2.0 * (p[0] - 1.0) / x3};
    }
    return {0.0, 0.0, 0.0};
}

// ln ∫_a^∞ k(x) dx in closed form.
inline double log_tail_integral(ModelKind kind, const Params& p, double a) {
    switch (kind) {
        case ModelKind::PowerLaw: return (1.0 - p[0]) * std::log(a) - std::log(p[0] - 1.0);
        case ModelKind::PowerLawWithCutoff:
            return (p[0] - 1.0) * std::log(p[1]) + log_upper_incomplete_gamma(1.0 - p[0], p[1] * a);
        case ModelKind::LogNormal: {
            const double z = a > 0.0 ? (std::log(a) - p[0]) / (std::numbers::sqrt2 * p[1])
                                     : -std::numeric_limits<double>::infinity();
            return std::log(p[1] * std::sqrt(0.5 * std::numbers::pi)) + log_erfc(z);
        }
        case ModelKind::Exponential: return -p[0] * a - std::log(p[0]);
        case ModelKind::StretchedExponential: return -p[0] * std::pow(a, p[1]) - std::log(p[0] * p[1]);
        case ModelKind::Gamma: return p[0] * std::log(p[1]) + log_upper_incomplete_gamma(p[0], a / p[1]);
    }
    return 0.0;
}

// Running log-sum-exp accumulator.
struct LogSum {
    double max = -std::numeric_limits<double>::infinity();
    double scaled = 0.0;

    void add(double v) {
        if (v == -std::numeric_limits<double>::infinity()) return;
        if (v > max) {
            scaled = scaled * std::exp(max - v) + 1.0;
            max = v;
        } else {
            scaled += std::exp(v - max);
        }
    }
    double value() const { return max + std::log(scaled); }
};

// ln Σ_{j ≥ a} k(j) for integer a ≥ 1. Direct summation until either the
// terms are negligible on a decreasing stretch, or the kernel is smooth on the
// unit scale, after which the remainder is ∫ + f/2 - f'/12 + f'''/720.
inline double log_lattice_sum(ModelKind kind, const Params& p, double a) {
    if (kind == ModelKind::PowerLaw) return log_hurwitz_zeta(p[0], a);
    constexpr int kMinDirect = 8;
    constexpr long kMaxDirect = 2'000'000;
    constexpr double kSmooth = 0.05;
    LogSum acc;
    double j = a;
    for (long i = 0;; ++i, j += 1.0) {
        const auto g = log_kernel_derivatives(kind, p, j);
        const double lk = log_kernel(kind, p, j);
        if (i >= kMinDirect && std::fabs(g[0]) <= kSmooth && std::fabs(g[1]) <= kSmooth * kSmooth) {
            const double g3 = g[0] * g[0] * g[0] + 3.0 * g[0] * g[1] + g[2];
            const double correction = 0.5 - g[0] / 12.0 + g3 / 720.0;
            acc.add(log_tail_integral(kind, p, j));
            if (correction > 0.0) {
                acc.add(lk + std::log(correction));
            }
            return acc.value();
        }
        acc.add(lk);
        if (g[0] < 0.0 && lk - acc.value() < -40.0) return acc.value();
        if (i >= kMaxDirect) {
            acc.add(log_tail_integral(kind, p, j + 0.5));
            return acc.value();
        }
    }
}

inline bool finite_all(const Params& p, int m) {
    for (int i = 0; i < m; ++i) {
        if (!std::isfinite(p[static_cast<std::size_t>(i)])) return false;
    }
    return true;
}

}  // namespace detail

/// A fully specified tail model: kind, parameters, lower bound and support
/// convention. Immutable; the log normalizer is computed once at construction.
class ModelSpec {
  public:
    /// Parameter order: PL (α); PLWC (α, λ); LN (μ, σ); exp (λ);
    /// str exp (λ, β); Gamma (k, θ).
    ModelSpec(ModelKind kind, Params params, double x_min, Support support = Support::Continuous)
        : kind_(kind), params_(params), x_min_(x_min), support_(support) {
        validate();
        if (support_ == Support::Discrete) {
            first_ = std::ceil(x_min_);
            log_norm_ = detail::log_lattice_sum(kind_, params_, first_);
        } else {
            first_ = x_min_;
            log_norm_ = detail::log_tail_integral(kind_, params_, x_min_);
        }
        if (!std::isfinite(log_norm_)) {
            throw std::domain_error("ModelSpec: tail mass is not finite for these parameters");
        }
    }

    ModelKind kind() const { return kind_; }
    const Params& params() const { return params_; }
    double param(std::size_t i) const { return params_.at(i); }
    double x_min() const { return x_min_; }
    Support support() const { return support_; }
    int parameter_count() const { return heavytail::parameter_count(kind_); }
    /// Smallest point of the support: x_min, or ceil(x_min) when discrete.
    double support_start() const { return first_; }
    double log_normalizer() const { return log_norm_; }

    /// ln P(X >= x) for x >= x_min (discrete: P(X >= ceil(x))).
    double log_survival(double x) const {
        if (support_ == Support::Discrete) {
            const double k = std::ceil(x);
            if (k <= first_) return 0.0;
            return detail::log_lattice_sum(kind_, params_, k) - log_norm_;
        }
        if (x <= x_min_) return 0.0;
        return std::min(0.0, detail::log_tail_integral(kind_, params_, x) - log_norm_);
    }

    friend bool operator==(const ModelSpec& a, const ModelSpec& b) {
        return a.kind_ == b.kind_ && a.params_ == b.params_ && a.x_min_ == b.x_min_ && a.support_ == b.support_;
    }

  private:
    void validate() const {
        const int m = heavytail::parameter_count(kind_);
        if (!detail::finite_all(params_, m)) throw std::domain_error("ModelSpec: non-finite parameter");
        if (!std::isfinite(x_min_) || x_min_ < 0.0) throw std::domain_error("ModelSpec: x_min must be finite and >= 0");
        const double a = params_[0];
        const double b = params_[1];
        switch (kind_) {
            case ModelKind::PowerLaw:
                if (!(a > 1.0)) throw std::domain_error("PowerLaw: alpha must exceed 1");
                if (!(x_min_ > 0.0)) throw std::domain_error("PowerLaw: x_min must be positive");
                break;
            case ModelKind::PowerLawWithCutoff:
                if (!(b > 0.0)) throw std::domain_error("PowerLawWithCutoff: lambda must be positive");
                if (!(x_min_ > 0.0)) throw std::domain_error("PowerLawWithCutoff: x_min must be positive");
                break;
            case ModelKind::LogNormal:
                if (!(b > 0.0)) throw std::domain_error("LogNormal: sigma must be positive");
                break;
            case ModelKind::Exponential:
                if (!(a > 0.0)) throw std::domain_error("Exponential: lambda must be positive");
                break;
            case ModelKind::StretchedExponential:
                if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("StretchedExponential: lambda and beta must be positive");
                break;
            case ModelKind::Gamma:
                if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("Gamma: k and theta must be positive");
                break;
        }
        if (support_ == Support::Discrete && std::ceil(x_min_) < 1.0) {
            throw std::domain_error("ModelSpec: discrete support must start at an integer >= 1");
        }
    }

    ModelKind kind_;
    Params params_;
    double x_min_;
    Support support_;
    double first_ = 0.0;
    double log_norm_ = 0.0;
};

/// ln p(x) of the tail-normalized density (continuous) or mass (discrete).
inline double log_pdf(const ModelSpec& model, double x) {
    if (!std::isfinite(x)) throw std::domain_error("log_pdf: non-finite x");
    if (x < model.x_min()) throw std::domain_error("log_pdf: x below x_min");
    if (model.support() == Support::Discrete && x != std::floor(x)) {
        throw std::domain_error("log_pdf: discrete model evaluated at a non-integer");
    }
    return detail::log_kernel(model.kind(), model.params(), x) - model.log_normalizer();
}

/// P(X <= x | X >= x_min).
inline double tail_cdf(const ModelSpec& model, double x) {
    if (!std::isfinite(x)) throw std::domain_error("tail_cdf: non-finite x");
    if (x < model.x_min()) throw std::domain_error("tail_cdf: x below x_min");
    if (model.support() == Support::Discrete) {
        return -std::expm1(model.log_survival(std::floor(x) + 1.0));
    }
    return -std::expm1(model.log_survival(x));
}

/// P(X < x | X >= x_min); equals tail_cdf for continuous models.
inline double tail_cdf_below(const ModelSpec& model, double x) {
    if (model.support() == Support::Continuous) return tail_cdf(model, x);
    if (x < model.x_min()) throw std::domain_error("tail_cdf_below: x below x_min");
    return -std::expm1(model.log_survival(x));
}

inline double log_likelihood(const ModelSpec& model, std::span<const double> tail) {
    if (tail.empty()) throw std::domain_error("log_likelihood: empty tail");
    double sum = 0.0;
    for (double x : tail) sum += log_pdf(model, x);
    return sum;
}

// ---------------------------------------------------------------------------
// Maximum likelihood

struct MleResult {
    ModelSpec model;
    double log_likelihood;
    bool converged;
};

namespace detail {

struct TailStats {
    std::span<const double> values;
    double n = 0.0;
    double sum_log = 0.0;
    double sum_log2 = 0.0;
    double sum_x = 0.0;
    double min = 0.0;
    std::size_t distinct = 0;

    explicit TailStats(std::span<const double> v) : values(v), n(static_cast<double>(v.size())) {
        min = std::numeric_limits<double>::infinity();
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (double x : v) {
            const double lx = std::log(x);
            sum_log += lx;
            sum_log2 += lx * lx;
            sum_x += x;
            min = std::min(min, x);
            if (!(x == prev)) ++distinct;
            prev = x;
        }
    }
    double mean() const { return sum_x / n; }
};

// Σ ln k(x_i) from sufficient statistics where they exist.
inline double kernel_sum(ModelKind kind, const Params& p, const TailStats& s) {
    switch (kind) {
        case ModelKind::PowerLaw: return -p[0] * s.sum_log;
        case ModelKind::PowerLawWithCutoff: return -p[0] * s.sum_log - p[1] * s.sum_x;
        case ModelKind::LogNormal: {
            const double sq = s.sum_log2 - 2.0 * p[0] * s.sum_log + s.n * p[0] * p[0];
            return -s.sum_log - sq / (2.0 * p[1] * p[1]);
        }
        case ModelKind::Exponential: return -p[0] * s.sum_x;
        case ModelKind::StretchedExponential: {
            double acc = 0.0;
            for (double x : s.values) acc += std::pow(x, p[1]);
            return (p[1] - 1.0) * s.sum_log - p[0] * acc;
        }
        case ModelKind::Gamma: return (p[0] - 1.0) * s.sum_log - s.sum_x / p[1];
    }
    return 0.0;
}

// Optimizer coordinates: positive parameters in log space, PL α as ln(α - 1).
inline Params to_natural(ModelKind kind, const std::vector<double>& q) {
    switch (kind) {
        case ModelKind::PowerLaw: return {1.0 + std::exp(q[0]), 0.0};
        case ModelKind::PowerLawWithCutoff: return {q[0], std::exp(q[1])};
        case ModelKind::LogNormal: return {q[0], std::exp(q[1])};
        case ModelKind::Exponential: return {std::exp(q[0]), 0.0};
        case ModelKind::StretchedExponential:
        case ModelKind::Gamma: return {std::exp(q[0]), std::exp(q[1])};
    }
    return {};
}

inline std::vector<double> to_search(ModelKind kind, const Params& p) {
    switch (kind) {
        case ModelKind::PowerLaw: return {std::log(p[0] - 1.0)};
        case ModelKind::PowerLawWithCutoff:
        case ModelKind::LogNormal: return {p[0], std::log(p[1])};
        case ModelKind::Exponential: return {std::log(p[0])};
        case ModelKind::StretchedExponential:
        case ModelKind::Gamma: return {std::log(p[0]), std::log(p[1])};
    }
    return {};
}

inline double negative_log_likelihood(ModelKind kind, const Params& p, const TailStats& s, double x_min,
                                      Support support) {
    try {
        const ModelSpec model(kind, p, x_min, support);
        const double v = -(kernel_sum(kind, p, s) - s.n * model.log_normalizer());
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

inline std::vector<Params> starting_points(ModelKind kind, const TailStats& s, double x_min) {
    const double pl_alpha = 1.0 + s.n / std::max(s.sum_log - s.n * std::log(x_min), 1e-300);
    const double mean = s.mean();
    switch (kind) {
        case ModelKind::PowerLaw: return {{pl_alpha, 0.0}};
        case ModelKind::PowerLawWithCutoff: {
            // second start sits next to the pure power law (λ → 0 limit)
            return {{pl_alpha, 1.0 / mean}, {pl_alpha, 1e-10 / mean}};
        }
        case ModelKind::LogNormal: {
            const double mu = s.sum_log / s.n;
            const double var = std::max(s.sum_log2 / s.n - mu * mu, 1e-12);
            return {{mu, std::sqrt(var)}};
        }
        case ModelKind::Exponential: return {{1.0 / std::max(mean - x_min, 1e-300), 0.0}};
        case ModelKind::StretchedExponential: return {{1.0 / mean, 1.0}};
        case ModelKind::Gamma: {
            double var = 0.0;
            for (double x : s.values) var += (x - mean) * (x - mean);
            var = std::max(var / s.n, 1e-12 * mean * mean);
            return {{mean * mean / var, var / mean}};
        }
    }
    return {};
}

}  // namespace detail

/// Maximum-likelihood parameters for `kind` on a tail (all values >= x_min).
/// Continuous PL and exponential use their closed forms; everything else is
/// a simplex search on the negative log-likelihood, restarted from its own
/// optimum until the objective stops improving.
inline MleResult mle_fit(ModelKind kind, std::span<const double> tail, double x_min,
                         Support support = Support::Continuous, const OptimizerConfig& config = {}) {
    if (tail.empty()) throw InsufficientDataError("mle_fit: empty tail");
    for (double x : tail) {
        if (!(x >= x_min)) throw std::domain_error("mle_fit: observation below x_min");
    }
    const detail::TailStats stats(tail);
    const double log_ratio_sum = stats.sum_log - stats.n * std::log(x_min);

    if (kind == ModelKind::PowerLaw && !(log_ratio_sum > 0.0)) {
        throw DegenerateDataError("mle_fit: every observation equals x_min; power-law exponent is unbounded");
    }
    if (kind == ModelKind::Exponential && !(stats.mean() > std::max(x_min, support == Support::Discrete ? std::ceil(x_min) : x_min))) {
        throw DegenerateDataError("mle_fit: every observation sits on the lower bound; rate is unbounded");
    }
    if (parameter_count(kind) == 2 && stats.distinct < 2) {
        throw DegenerateDataError("mle_fit: two-parameter fit needs at least two distinct values");
    }

    if (support == Support::Continuous && kind == ModelKind::PowerLaw) {
        const ModelSpec model(kind, {1.0 + stats.n / log_ratio_sum, 0.0}, x_min, support);
        return {model, log_likelihood(model, tail), true};
    }
    if (support == Support::Continuous && kind == ModelKind::Exponential) {
        const ModelSpec model(kind, {1.0 / (stats.mean() - x_min), 0.0}, x_min, support);
        return {model, log_likelihood(model, tail), true};
    }

    auto objective = [&](const std::vector<double>& q) {
        return detail::negative_log_likelihood(kind, detail::to_natural(kind, q), stats, x_min, support);
    };

    std::optional<MinimizeResult> best;
    for (const auto& start : detail::starting_points(kind, stats, x_min)) {
        std::vector<double> q = detail::to_search(kind, start);
        MinimizeResult run;
        try {
            run = minimize(objective, q, config);
        } catch (const OptimizerError&) {
            continue;
        }
        for (int restart = 0; restart < 6; ++restart) {
            MinimizeResult again = minimize(objective, run.argmin, config);
            const bool improved = again.value < run.value - config.absolute_tolerance;
            if (again.value <= run.value) run = again;
            if (!improved) break;
        }
        if (!best || run.value < best->value) best = run;
    }
    if (!best) throw OptimizerError("mle_fit: objective non-finite at every starting point");

    const ModelSpec model(kind, detail::to_natural(kind, best->argmin), x_min, support);
    return {model, -best->value, best->converged};
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

// Smallest x with ln S(x) <= target, S the continuous tail survival.
inline double invert_continuous(const ModelSpec& model, double log_target) {
    const auto& p = model.params();
    const double xm = model.x_min();
    switch (model.kind()) {
        case ModelKind::PowerLaw: return xm * std::exp(log_target / (1.0 - p[0]));
        case ModelKind::Exponential: return xm - log_target / p[0];
        case ModelKind::StretchedExponential: return std::pow(std::pow(xm, p[1]) - log_target / p[0], 1.0 / p[1]);
        default: break;
    }
    // safeguarded Newton on t = ln x, f(t) = ln S(e^t) - target (decreasing)
    auto f = [&](double t) { return model.log_survival(std::exp(t)) - log_target; };
    double lo = xm > 0.0 ? std::log(xm) : -700.0;
    double step = 1.0;
    double hi = lo + step;
    while (f(hi) > 0.0) {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        if (hi > 700.0) return std::exp(700.0);
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double ft = f(t);
        if (ft > 0.0) lo = t; else hi = t;
        const double x = std::exp(t);
        // d ln S / d t = -x p(x) / S(x)
        const double slope = -std::exp(std::log(x) + log_kernel(model.kind(), p, x) - log_tail_integral(model.kind(), p, x));
        double next = t - ft / slope;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) < 1e-14 * std::max(1.0, std::fabs(t)) || hi - lo < 1e-15 * std::max(1.0, std::fabs(t))) {
            t = next;
            break;
        }
        t = next;
    }
    return std::max(xm, std::exp(t));
}

// Smallest integer k >= start with P(X <= k) >= 1 - exp(log_target).
inline double invert_discrete(const ModelSpec& model, double log_target, double guess) {
    const double start = model.support_start();
    auto reached = [&](double k) { return model.log_survival(k + 1.0) <= log_target; };
    double lo = start;  // invariant: answer >= lo
    double hi = std::max(start, std::floor(guess));
    if (reached(hi)) {
        if (hi == start) return start;
        // answer in [lo, hi]
    } else {
        double step = std::max(1.0, hi - start);
        lo = hi + 1.0;
        hi = lo + step;
        while (!reached(hi)) {
            lo = hi + 1.0;
            step *= 2.0;
            hi = lo + step;
            if (hi > 1e15) return hi;
        }
    }
    while (lo < hi) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (reached(mid)) hi = mid; else lo = mid + 1.0;
    }
    return lo;
}

}  // namespace detail

/// One draw from the tail model.
inline double sample_one(const ModelSpec& model, Rng& rng) {
    const double u = uniform01(rng);
    const double log_target = std::log1p(-u);
    if (model.support() == Support::Continuous) return detail::invert_continuous(model, log_target);
    const ModelSpec proxy(model.kind(), model.params(), model.support_start() - 0.5 > 0.0 ? model.support_start() - 0.5 : model.support_start(),
                          Support::Continuous);
    const double guess = detail::invert_continuous(proxy, log_target);
    return detail::invert_discrete(model, log_target, guess);
}

inline std::vector<double> sample(const ModelSpec& model, std::size_t n, Rng& rng) {
    if (n == 0) throw std::domain_error("sample: n must be >= 1");
    std::vector<double> out(n);
    for (auto& v : out) v = sample_one(model, rng);
    return out;
}

/// n i.i.d. draws, deterministic for a fixed seed.
inline std::vector<double> sample(const ModelSpec& model, std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample(model, n, rng);
}

}  // namespace heavytail
