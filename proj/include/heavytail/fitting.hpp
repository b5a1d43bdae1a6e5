#pragma once

// Tail estimation: KS distance, x_min selection by KS minimization,
// fixed-bound fits and the semi-parametric bootstrap goodness-of-fit test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/random.hpp"

namespace heavytail {

/// Sorted (ascending) positive observations plus a label.
class SizeDataset {
  public:
    SizeDataset() = default;
    explicit SizeDataset(std::vector<double> values, std::string label = {})
        : values_(std::move(values)), label_(std::move(label)) {
        if (values_.empty()) throw InsufficientDataError("SizeDataset: no observations");
        for (double v : values_) {
            if (!std::isfinite(v) || !(v > 0.0)) throw std::domain_error("SizeDataset: values must be finite and positive");
        }
        std::sort(values_.begin(), values_.end());
    }

    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Observations >= x_min, as a view into this dataset.
    std::span<const double> tail(double x_min) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), x_min);
        return {values_.data() + (it - values_.begin()), static_cast<std::size_t>(values_.end() - it)};
    }
    std::span<const double> below(double x_min) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), x_min);
        return {values_.data(), static_cast<std::size_t>(it - values_.begin())};
    }

    std::vector<double> distinct_values() const {
        std::vector<double> out;
        for (double v : values_) {
            if (out.empty() || out.back() != v) out.push_back(v);
        }
        return out;
    }

  private:
    std::vector<double> values_;
    std::string label_;
};

struct TailFit {
    ModelSpec model;
    double x_min;
    std::size_t n_tail;
    double log_likelihood;
    double ks_D;
    bool converged;

    ModelKind kind() const { return model.kind(); }
};

struct ScanOptions {
    Support support = Support::Continuous;
    /// PL only: a candidate is admissible when (α̂ - 1)/√n_tail falls below
    /// this value. If no candidate qualifies the unrestricted minimum is used.
    std::optional<double> sigma_threshold;
    /// Abandon a candidate's KS pass once it cannot beat the incumbent.
    bool prune = true;
    OptimizerConfig optimizer{};
};

namespace detail {

inline bool is_sorted_tail(std::span<const double> tail) { return std::is_sorted(tail.begin(), tail.end()); }

// KS distance over the unique values of a sorted tail; `cdf(u)` returns
// {P(X < u), P(X <= u)}. Returns early with a value >= bound once reached.
template <class Cdf>
double ks_distance(std::span<const double> tail, Cdf&& cdf, double bound = std::numeric_limits<double>::infinity()) {
    const double n = static_cast<double>(tail.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < tail.size()) {
        const double u = tail[i];
        std::size_t j = i + 1;
        while (j < tail.size() && tail[j] == u) ++j;
        const auto [below, at] = cdf(u, i);
        d = std::max({d, std::fabs(static_cast<double>(j) / n - at), std::fabs(static_cast<double>(i) / n - below)});
        if (d >= bound) return d;
        i = j;
    }
    return d;
}

// CDF evaluator that reuses S(u + 1) when the next unique value is u + 1.
class DiscreteCdf {
  public:
    explicit DiscreteCdf(const ModelSpec& m) : m_(m) {}
    std::pair<double, double> operator()(double u, std::size_t) {
        const double ls_u = (u == cached_at_) ? cached_ : m_.log_survival(u);
        cached_at_ = u + 1.0;
        cached_ = m_.log_survival(cached_at_);
        return {-std::expm1(ls_u), -std::expm1(cached_)};
    }

  private:
    const ModelSpec& m_;
    double cached_at_ = std::numeric_limits<double>::quiet_NaN();
    double cached_ = 0.0;
};

inline double ks_bounded(const ModelSpec& model, std::span<const double> tail, double bound) {
    if (model.support() == Support::Discrete) return ks_distance(tail, DiscreteCdf(model), bound);
    return ks_distance(
        tail,
        [&](double u, std::size_t) {
            const double f = tail_cdf(model, u);
            return std::pair{f, f};
        },
        bound);
}

}  // namespace detail

/// Supremum distance between the empirical CDF of `tail` and the model CDF,
/// checked on both sides of every jump.
inline double ks_statistic(const ModelSpec& model, std::span<const double> tail) {
    if (tail.empty()) throw std::domain_error("ks_statistic: empty tail");
    if (!detail::is_sorted_tail(tail)) {
        std::vector<double> sorted(tail.begin(), tail.end());
        std::sort(sorted.begin(), sorted.end());
        return ks_statistic(model, sorted);
    }
    if (tail.front() < model.x_min()) throw std::domain_error("ks_statistic: observation below x_min");
    return detail::ks_bounded(model, tail, std::numeric_limits<double>::infinity());
}

/// Fit `kind` on the observations >= x_min.
inline TailFit fixed_xmin_fit(const SizeDataset& data, ModelKind kind, double x_min,
                              Support support = Support::Continuous, const OptimizerConfig& optimizer = {}) {
    const auto tail = data.tail(x_min);
    if (tail.size() < static_cast<std::size_t>(parameter_count(kind) + 1)) {
        throw InsufficientDataError("fixed_xmin_fit: only " + std::to_string(tail.size()) + " observations at or above x_min");
    }
    auto mle = mle_fit(kind, tail, x_min, support, optimizer);
    const double d = ks_statistic(mle.model, tail);
    return {mle.model, x_min, tail.size(), mle.log_likelihood, d, mle.converged};
}

namespace detail {

struct ScanCandidate {
    std::optional<ModelSpec> model;
    double log_likelihood = 0.0;
    bool converged = true;
};

// Continuous PL and exponential: closed-form fits from suffix sums.
class ClosedFormScanner {
  public:
    ClosedFormScanner(const SizeDataset& data, ModelKind kind) : data_(data), kind_(kind) {
        const auto& v = data.values();
        logs_.resize(v.size());
        suffix_.assign(v.size() + 1, 0.0);
        for (std::size_t i = v.size(); i-- > 0;) {
            logs_[i] = std::log(v[i]);
            suffix_[i] = suffix_[i + 1] + (kind == ModelKind::PowerLaw ? logs_[i] : v[i]);
        }
    }

    // Candidate whose tail starts at index `start`.
    ScanCandidate fit(std::size_t start) const {
        const auto& v = data_.values();
        const double xm = v[start];
        const double n = static_cast<double>(v.size() - start);
        const double s = suffix_[start];
        ScanCandidate out;
        if (kind_ == ModelKind::PowerLaw) {
            const double denom = s - n * logs_[start];
            if (!(denom > 0.0)) return out;
            const double alpha = 1.0 + n / denom;
            out.model.emplace(kind_, Params{alpha, 0.0}, xm);
            out.log_likelihood = n * std::log((alpha - 1.0) / xm) - alpha * denom;
        } else {
            const double excess = s / n - xm;
            if (!(excess > 0.0)) return out;
            const double lambda = 1.0 / excess;
            out.model.emplace(kind_, Params{lambda, 0.0}, xm);
            out.log_likelihood = n * std::log(lambda) - lambda * (s - n * xm);
        }
        return out;
    }

    double ks(const ModelSpec& m, std::size_t start, double bound) const {
        const auto tail = std::span<const double>(data_.values()).subspan(start);
        const double p = m.param(0);
        const double xm = data_.values()[start];
        const double lxm = logs_[start];
        return ks_distance(
            tail,
            [&](double u, std::size_t i) {
                const double f = kind_ == ModelKind::PowerLaw ? -std::expm1((1.0 - p) * (logs_[start + i] - lxm))
                                                              : -std::expm1(-p * (u - xm));
                return std::pair{f, f};
            },
            bound);
    }

  private:
    const SizeDataset& data_;
    ModelKind kind_;
    std::vector<double> logs_;
    std::vector<double> suffix_;
};

}  // namespace detail

/// Choose x_min among the distinct observed values by minimising the KS
/// distance of the fitted tail; ties go to the smaller x_min.
inline TailFit scan_xmin(const SizeDataset& data, ModelKind kind, const ScanOptions& options = {}) {
    const auto& v = data.values();
    const std::size_t m = static_cast<std::size_t>(parameter_count(kind));
    const bool closed_form = options.support == Support::Continuous &&
                             (kind == ModelKind::PowerLaw || kind == ModelKind::Exponential);
    std::optional<detail::ClosedFormScanner> fast;
    if (closed_form) fast.emplace(data, kind);

    const bool use_sigma = options.sigma_threshold.has_value() && kind == ModelKind::PowerLaw;
    std::optional<TailFit> best_any;
    std::optional<TailFit> best_qualified;

    // index of the first occurrence of each distinct value
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == 0 || v[i] != v[i - 1]) starts.push_back(i);
    }

    for (std::size_t c = 0; c < starts.size(); ++c) {
        const std::size_t start = starts[c];
        const std::size_t n_tail = v.size() - start;
        const std::size_t distinct_in_tail = starts.size() - c;
        if (n_tail < m + 1 || distinct_in_tail < 2) break;
        const double xm = v[start];

        detail::ScanCandidate cand;
        try {
            if (fast) {
                cand = fast->fit(start);
            } else {
                auto mle = mle_fit(kind, data.tail(xm), xm, options.support, options.optimizer);
                cand.model.emplace(mle.model);
                cand.log_likelihood = mle.log_likelihood;
                cand.converged = mle.converged;
            }
        } catch (const std::exception&) {
            continue;
        }
        if (!cand.model) continue;

        bool qualified = true;
        if (use_sigma) {
            const double sigma = (cand.model->param(0) - 1.0) / std::sqrt(static_cast<double>(n_tail));
            qualified = sigma < *options.sigma_threshold;
            if (!qualified && best_qualified) continue;
        }
        const std::optional<TailFit>& incumbent = qualified && use_sigma ? best_qualified : best_any;
        const double bound = options.prune && incumbent ? incumbent->ks_D : std::numeric_limits<double>::infinity();
        const double d = fast ? fast->ks(*cand.model, start, bound) : detail::ks_bounded(*cand.model, data.tail(xm), bound);

        TailFit fit{*cand.model, xm, n_tail, cand.log_likelihood, d, cand.converged};
        if (!best_any || d < best_any->ks_D) best_any = fit;
        if (use_sigma && qualified && (!best_qualified || d < best_qualified->ks_D)) best_qualified = fit;
    }

    if (best_qualified) return *best_qualified;
    if (best_any) return *best_any;
    throw InsufficientDataError("scan_xmin: no admissible x_min candidate (need " + std::to_string(m + 1) +
                                " observations and 2 distinct values in the tail)");
}

/// Semi-parametric bootstrap p-value for a KS-selected fit: the fraction of
/// synthetic datasets whose re-scanned D is at least fit.ks_D.
inline double bootstrap_gof(const SizeDataset& data, const TailFit& fit, std::size_t replicates, std::uint64_t seed,
                            const ScanOptions& options = {}) {
    if (replicates < 100) throw ConfigurationError("bootstrap_gof: at least 100 replicates are required");
    if (fit.ks_D <= 0.0) return 1.0;
    const auto below = data.below(fit.x_min);
    const std::size_t n = data.size();
    const double p_below = static_cast<double>(below.size()) / static_cast<double>(n);

    std::size_t counted = 0;
    std::size_t exceed = 0;
    std::vector<double> synthetic(n);
    for (std::size_t r = 0; r < replicates; ++r) {
        Rng rng = make_rng(seed, {static_cast<std::uint64_t>(r)});
        for (auto& x : synthetic) {
            if (!below.empty() && uniform01(rng) < p_below) {
                x = below[uniform_index(rng, below.size())];
            } else {
                x = sample_one(fit.model, rng);
            }
        }
        try {
            const SizeDataset replica(synthetic, data.label());
            const TailFit refit = scan_xmin(replica, fit.kind(), options);
            ++counted;
            if (refit.ks_D >= fit.ks_D) ++exceed;
        } catch (const InsufficientDataError&) {
            // replicate with no admissible tail carries no information
        }
    }
    if (counted == 0) throw InsufficientDataError("bootstrap_gof: no replicate admitted a fit");
    return static_cast<double>(exceed) / static_cast<double>(counted);
}

}  // namespace heavytail
