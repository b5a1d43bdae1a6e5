#pragma once

// Rank-plot regression and the two sampling experiments on N-gram profiles:
// random samples of languages drawn across families, and within-family
// growth curves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavytail/corpus.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/random.hpp"
#include "json.hpp"

namespace heavytail {

struct RegressionResult {
    double alpha_sp = 0.0;  // negated slope
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;

    double slope() const { return -alpha_sp; }
};

/// Least squares of ln y on ln x.
inline RegressionResult loglog_regression(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_regression: x and y differ in length");
    if (x.size() < 2) throw InsufficientDataError("loglog_regression: need at least 2 points");
    const double n = static_cast<double>(x.size());
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("loglog_regression: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        syy += (ly[i] - my) * (ly[i] - my);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateDataError("loglog_regression: zero variance");
    const double slope = sxy / sxx;
    return {-slope, my - slope * mx, std::min(1.0, sxy * sxy / (sxx * syy)), x.size()};
}

/// Frequency-rank regression: values sorted descending take ranks 1..n (equal
/// values keep distinct ranks), then ln value is regressed on ln rank.
inline RegressionResult rank_regression(std::span<const double> values) {
    if (values.size() < 3) throw InsufficientDataError("rank_regression: need at least 3 values");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    if (v.front() == v.back()) throw DegenerateDataError("rank_regression: all values are equal");
    std::vector<double> ranks(v.size());
    std::iota(ranks.begin(), ranks.end(), 1.0);
    return loglog_regression(ranks, v);
}

namespace detail {

// First k entries of a uniform random permutation of 0..n-1.
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + uniform_index(rng, n - i)]);
    idx.resize(k);
    return idx;
}

inline std::vector<double> cumulative_of(const std::vector<std::size_t>& per_n) {
    std::vector<double> out(per_n.size());
    double s = 0.0;
    for (std::size_t i = 0; i < per_n.size(); ++i) out[i] = s += static_cast<double>(per_n[i]);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Random samples across the whole database

struct RandomSampleResult {
    int max_n = 0;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<double>> cumulative;  // [size index][k - 1], mean over repeats
    std::vector<RegressionResult> regressions;    // [k - 1]: ln cumulative(k) on ln size
};

/// For each requested size s, draw s languages uniformly without replacement
/// from `units` (ignoring family) and measure the cumulative profile. Draw
/// (k, r) uses the stream (seed, k, r).
inline RandomSampleResult random_sample_experiment(const std::vector<corpus::LanguageUnit>& units,
                                                   const corpus::GramIndex& index, std::span<const std::size_t> sizes,
                                                   std::uint64_t seed, std::size_t repeats = 1) {
    if (repeats < 1) throw ConfigurationError("random_sample_experiment: repeats must be >= 1");
    if (sizes.empty()) throw InsufficientDataError("random_sample_experiment: no sample sizes");
    for (auto s : sizes) {
        if (s < 1 || s > units.size()) {
            throw std::domain_error("random_sample_experiment: sample size " + std::to_string(s) +
                                    " outside 1.." + std::to_string(units.size()));
        }
    }
    RandomSampleResult out;
    out.max_n = index.max_n();
    out.repeats = repeats;
    out.seed = seed;
    out.sizes.assign(sizes.begin(), sizes.end());
    corpus::UnionCounter counter(index);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::vector<double> mean(static_cast<std::size_t>(out.max_n), 0.0);
        for (std::size_t r = 0; r < repeats; ++r) {
            Rng rng = make_rng(seed, {k, r});
            const auto chosen = detail::sample_without_replacement(rng, units.size(), sizes[k]);
            const auto cum = detail::cumulative_of(counter.count(units, chosen));
            for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += cum[j] / static_cast<double>(repeats);
        }
        out.cumulative.push_back(std::move(mean));
    }
    const bool varied = std::adjacent_find(out.sizes.begin(), out.sizes.end(), std::not_equal_to<>()) != out.sizes.end();
    if (varied) {
        std::vector<double> x(out.sizes.begin(), out.sizes.end());
        for (int n = 1; n <= out.max_n; ++n) {
            std::vector<double> y;
            for (const auto& row : out.cumulative) y.push_back(row[static_cast<std::size_t>(n - 1)]);
            if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) {
                // saturated: flat line, correlation undefined
                out.regressions.push_back({0.0, std::log(y.front()), std::numeric_limits<double>::quiet_NaN(), y.size()});
            } else {
                out.regressions.push_back(loglog_regression(x, y));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Growth curves within one family

struct GrowthPoint {
    std::size_t sample_size = 0;
    std::vector<double> mean_per_n;  // [n - 1]
    std::vector<double> sem_per_n;
    std::vector<double> mean_cumulative;
    std::vector<double> sem_cumulative;
};

struct GrowthCurve {
    std::string name;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    int max_n = 0;
    std::vector<GrowthPoint> points;  // sample sizes 1..members

    /// Series of per-n means (cumulative = false) or cumulative means, by sample size.
    std::vector<double> series(int n, bool cumulative = false) const {
        std::vector<double> y;
        for (const auto& p : points) y.push_back((cumulative ? p.mean_cumulative : p.mean_per_n).at(static_cast<std::size_t>(n - 1)));
        return y;
    }
};

/// Mean profile sizes of random i-language subsets, i = 1..member count,
/// over `iterations` draws each. Draw (i, t) uses the stream (seed, i, t).
inline GrowthCurve growth_curves(const std::vector<corpus::LanguageUnit>& units, const corpus::GramIndex& index,
                                 std::string name, std::size_t iterations, std::uint64_t seed) {
    if (iterations < 1) throw ConfigurationError("growth_curves: iterations must be >= 1");
    if (units.size() < 2) throw InsufficientDataError("growth_curves: need at least 2 member languages");
    GrowthCurve curve{std::move(name), iterations, seed, index.max_n(), {}};
    corpus::UnionCounter counter(index);
    const std::size_t m = static_cast<std::size_t>(curve.max_n);
    const double t = static_cast<double>(iterations);
    for (std::size_t i = 1; i <= units.size(); ++i) {
        std::vector<double> s1(m, 0.0), s2(m, 0.0), c1(m, 0.0), c2(m, 0.0);
        for (std::size_t it = 0; it < iterations; ++it) {
            Rng rng = make_rng(seed, {i, it});
            const auto per_n = counter.count(units, detail::sample_without_replacement(rng, units.size(), i));
            const auto cum = detail::cumulative_of(per_n);
            for (std::size_t j = 0; j < m; ++j) {
                const double v = static_cast<double>(per_n[j]);
                s1[j] += v;
                s2[j] += v * v;
                c1[j] += cum[j];
                c2[j] += cum[j] * cum[j];
            }
        }
        GrowthPoint p{i, {}, {}, {}, {}};
        auto moments = [&](double a, double b, std::vector<double>& mean, std::vector<double>& sem) {
            const double mu = a / t;
            const double var = iterations > 1 ? std::max(0.0, (b - t * mu * mu) / (t - 1.0)) : 0.0;
            mean.push_back(mu);
            sem.push_back(std::sqrt(var / t));
        };
        for (std::size_t j = 0; j < m; ++j) {
            moments(s1[j], s2[j], p.mean_per_n, p.sem_per_n);
            moments(c1[j], c2[j], p.mean_cumulative, p.sem_cumulative);
        }
        curve.points.push_back(std::move(p));
    }
    return curve;
}

/// Units and index for one corpus, for callers that do not share an index.
struct PreparedCorpus {
    corpus::GramIndex index;
    std::vector<corpus::LanguageUnit> units;
};

inline PreparedCorpus prepare(const std::vector<corpus::WordList>& lists, int max_n, corpus::TokenizeMode mode,
                              const corpus::Alphabet& alphabet = corpus::Alphabet::asjp()) {
    PreparedCorpus p{corpus::GramIndex(max_n), {}};
    p.units = p.index.units(lists, mode, alphabet);
    return p;
}

inline GrowthCurve growth_curves(const corpus::FamilyCorpus& family, std::size_t iterations, std::uint64_t seed,
                                 int max_n = 5, corpus::TokenizeMode mode = corpus::TokenizeMode::Raw,
                                 const corpus::Alphabet& alphabet = corpus::Alphabet::asjp()) {
    const auto prepared = prepare(family.lists, max_n, mode, alphabet);
    return growth_curves(prepared.units, prepared.index, family.name, iterations, seed);
}

/// Mean slope over the last quarter of a curve divided by the mean slope over
/// the first quarter (quarter = max(2, s/4) points).
inline double quartile_slope_ratio(std::span<const double> y) {
    const std::size_t s = y.size();
    if (s < 2) throw InsufficientDataError("quartile_slope_ratio: need at least 2 points");
    const std::size_t q = std::min(s, std::max<std::size_t>(2, s / 4));
    const double first = (y[q - 1] - y[0]) / static_cast<double>(q - 1);
    const double last = (y[s - 1] - y[s - q]) / static_cast<double>(q - 1);
    if (first == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return last / first;
}

// ---------------------------------------------------------------------------
// Plot data

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline nlohmann::json to_json(const RegressionResult& r) {
    return {{"alpha_sp", r.alpha_sp}, {"slope", r.slope()}, {"intercept", r.intercept}, {"r_squared", std::isfinite(r.r_squared) ? nlohmann::json(r.r_squared) : nlohmann::json(nullptr)},
            {"points", r.points}};
}

inline void write_growth_tsv(std::ostream& out, const GrowthCurve& c) {
    out << "i";
    for (int n = 1; n <= c.max_n; ++n) out << "\tmean_" << n << "gram\tsem_" << n << "gram";
    for (int n = 1; n <= c.max_n; ++n) out << "\tmean_cum" << n << "\tsem_cum" << n;
    out << '\n';
    for (const auto& p : c.points) {
        out << p.sample_size;
        for (std::size_t j = 0; j < p.mean_per_n.size(); ++j) out << '\t' << format_number(p.mean_per_n[j]) << '\t' << format_number(p.sem_per_n[j]);
        for (std::size_t j = 0; j < p.mean_cumulative.size(); ++j) out << '\t' << format_number(p.mean_cumulative[j]) << '\t' << format_number(p.sem_cumulative[j]);
        out << '\n';
    }
}

/// Sidecar summary: per-n log-log fits of the mean curves and the quartile
/// slope ratios used to tell flattening curves from growing ones.
inline nlohmann::json growth_summary(const GrowthCurve& c) {
    nlohmann::json series = nlohmann::json::array();
    std::vector<double> x;
    for (const auto& p : c.points) x.push_back(static_cast<double>(p.sample_size));
    for (int n = 1; n <= c.max_n; ++n) {
        const auto y = c.series(n);
        nlohmann::json s{{"n", n}, {"quartile_slope_ratio", quartile_slope_ratio(y)}};
        try {
            s["loglog"] = to_json(loglog_regression(x, y));
        } catch (const DegenerateDataError&) {
            s["loglog"] = nullptr;
        }
        series.push_back(std::move(s));
    }
    return {{"family", c.name}, {"iterations", c.iterations}, {"seed", c.seed}, {"max_n", c.max_n},
            {"sample_sizes", c.points.size()}, {"per_n", std::move(series)}};
}

inline void write_random_sample_tsv(std::ostream& out, const RandomSampleResult& r) {
    out << "draw\tsize";
    for (int n = 1; n <= r.max_n; ++n) out << "\tcum" << n;
    out << '\n';
    for (std::size_t k = 0; k < r.sizes.size(); ++k) {
        out << k << '\t' << r.sizes[k];
        for (double v : r.cumulative[k]) out << '\t' << format_number(v);
        out << '\n';
    }
}

inline nlohmann::json random_sample_summary(const RandomSampleResult& r) {
    nlohmann::json regs = nlohmann::json::array();
    for (std::size_t j = 0; j < r.regressions.size(); ++j) {
        auto e = to_json(r.regressions[j]);
        e["n"] = j + 1;
        regs.push_back(std::move(e));
    }
    return {{"seed", r.seed}, {"repeats", r.repeats}, {"max_n", r.max_n}, {"draws", r.sizes.size()},
            {"regressions", std::move(regs)}};
}

}  // namespace heavytail
