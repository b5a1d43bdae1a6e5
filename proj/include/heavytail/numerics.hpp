#pragma once

// Special functions and a derivative-free simplex minimizer used by the
// tail models and their likelihood fits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace heavytail {

namespace detail {

inline void require_finite(double v, const char* fn) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(fn) + ": non-finite argument");
    }
}

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

}  // namespace detail

/// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
    detail::require_finite(x, "log_gamma");
    if (x <= 0.0) throw std::domain_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

/// Complementary error function.
inline double erfc(double x) {
    detail::require_finite(x, "erfc");
    return std::erfc(x);
}

/// ln erfc(x), finite for all finite x (asymptotic form once erfc underflows).
inline double log_erfc(double x) {
    if (std::isnan(x)) throw std::domain_error("log_erfc: NaN argument");
    if (x == -std::numeric_limits<double>::infinity()) return std::log(2.0);
    if (x < 20.0) return std::log(std::erfc(x));
    // erfc(x) = e^{-x^2}/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(2x^2)^2 - 15/(2x^2)^3 + ...)
    const double t = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 12; ++k) {
        term *= -(2.0 * k - 1.0) * t;
        sum += term;
    }
    return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log(sum);
}

/// ln ζ(s, q) = ln Σ_{k≥0} (k+q)^{-s}, s > 1, q > 0. Euler-Maclaurin after a
/// short direct sum; all terms are scaled by q^s so large q never underflows.
inline double log_hurwitz_zeta(double s, double q) {
    detail::require_finite(s, "log_hurwitz_zeta");
    detail::require_finite(q, "log_hurwitz_zeta");
    if (s <= 1.0) throw std::domain_error("log_hurwitz_zeta: s must exceed 1");
    if (q <= 0.0) throw std::domain_error("log_hurwitz_zeta: q must be positive");

    static constexpr std::array<double, 12> kEm{
        12.0,
        -720.0,
        30240.0,
        -1209600.0,
        47900160.0,
        -1.8924375803183791606e9,
        7.47242496e10,
        -2.950130727918164224e12,
        1.1646782814350067249e14,
        -4.5979787224074726105e15,
        1.8152105401943546773e17,
        -7.1661652561756670113e18};

    // scaled term: ((q+k)/q)^{-s}
    auto scaled = [&](double a) { return std::exp(-s * std::log(a / q)); };
    double sum = 1.0;
    double a = q;
    double b = 0.0;
    int i = 0;
    while (i < 9 || a <= 9.0) {
        ++i;
        a += 1.0;
        b = scaled(a);
        sum += b;
        if (std::fabs(b / sum) < detail::kEps) return std::log(sum) - s * std::log(q);
    }
    const double w = a;
    sum += b * w / (s - 1.0);
    sum -= 0.5 * b;
    double fact = 1.0;
    double k = 0.0;
    for (double coeff : kEm) {
        fact *= s + k;
        b /= w;
        const double t = fact * b / coeff;
        sum += t;
        if (std::fabs(t / sum) < detail::kEps) break;
        k += 1.0;
        fact *= s + k;
        b /= w;
        k += 1.0;
    }
    return std::log(sum) - s * std::log(q);
}

inline double hurwitz_zeta(double s, double q) { return std::exp(log_hurwitz_zeta(s, q)); }

namespace detail {

// ln Γ(1+s) for |s| <= 0.5 from its Taylor series in ζ(k); exact near s = 0
// where lgamma(1+s) loses the low bits of s.
inline double log_gamma_1p_small(double s) {
    static const std::vector<double> zeta_k = [] {
        std::vector<double> z(80, 0.0);
        for (std::size_t k = 2; k < z.size(); ++k) {
            z[k] = hurwitz_zeta(static_cast<double>(k), 1.0);
        }
        return z;
    }();
    double result = -kEulerGamma * s;
    double power = -s;
    for (std::size_t k = 2; k < zeta_k.size(); ++k) {
        power *= -s;
        const double term = zeta_k[k] * power / static_cast<double>(k);
        result += term;
        if (std::fabs(term) < kEps * std::fabs(result) * 1e-2) break;
    }
    return result;
}

// Γ(s, x) for |s| <= 0.5, 0 < x <= 1, via Γ(s) - x^s/s computed without the
// 1/s cancellation.
inline double upper_gamma_temme(double s, double x) {
    const double lx = std::log(x);
    double a = 0.0;
    double b = 0.0;
    if (s == 0.0) {
        a = -kEulerGamma;
        b = lx;
    } else {
        a = std::expm1(log_gamma_1p_small(s)) / s;
        b = std::expm1(s * lx) / s;
    }
    // Σ_{k≥1} (-x)^k / (k! (s+k))
    double series = 0.0;
    double pow_term = 1.0;
    for (int k = 1; k < 200; ++k) {
        pow_term *= -x / k;
        const double term = pow_term / (s + k);
        series += term;
        if (std::fabs(term) < kEps * std::fabs(series) * 1e-2) break;
    }
    return (a - b) - std::exp(s * lx) * series;
}

// ln Γ(s, x) by the modified Lentz continued fraction. Valid for any s once x
// is away from zero; converges quickly for x > max(1, s + 1).
inline double log_upper_gamma_cf(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return -x + s * std::log(x) + std::log(h);
}

// Regularized lower incomplete gamma P(s, x) by its power series; s > 0.
inline double lower_gamma_p_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace detail

/// ln Γ(s, x), the log of the upper incomplete gamma function. Negative
/// non-integer and integer s are supported for x > 0.
inline double log_upper_incomplete_gamma(double s, double x) {
    detail::require_finite(s, "upper_incomplete_gamma");
    detail::require_finite(x, "upper_incomplete_gamma");
    if (x < 0.0) throw std::domain_error("upper_incomplete_gamma: x must be non-negative");
    if (x == 0.0) {
        if (s <= 0.0) throw std::domain_error("upper_incomplete_gamma: divergent for s <= 0 at x = 0");
        return std::lgamma(s);
    }
    if (s >= 0.5) {
        if (x < s + 1.0) {
            return std::lgamma(s) + std::log1p(-detail::lower_gamma_p_series(s, x));
        }
        return detail::log_upper_gamma_cf(s, x);
    }
    if (x > 1.0) return detail::log_upper_gamma_cf(s, x);

    // Small x, s < 1/2: start at s0 in (-1/2, 1/2] and walk down with the
    // recurrence Γ(t-1, x) = (Γ(t, x) - x^{t-1} e^{-x}) / (t - 1), carried in
    // the scaled form r(t) = Γ(t, x) x^{-t} e^{x}.
    const double shift = std::ceil(s - 0.5);
    double t = s - shift;
    const double lx = std::log(x);
    double r = detail::upper_gamma_temme(t, x) * std::exp(x - t * lx);
    const int steps = static_cast<int>(std::lround(t - s));
    for (int i = 0; i < steps; ++i) {
        r = (x * r - 1.0) / (t - 1.0);
        t -= 1.0;
    }
    return s * lx - x + std::log(r);
}

/// Γ(s, x) = ∫_x^∞ t^{s-1} e^{-t} dt.
inline double upper_incomplete_gamma(double s, double x) {
    return std::exp(log_upper_incomplete_gamma(s, x));
}

/// Upper regularized gamma Q(s, x) = Γ(s, x) / Γ(s), s > 0.
inline double gamma_q(double s, double x) {
    if (s <= 0.0) throw std::domain_error("gamma_q: s must be positive");
    return std::exp(log_upper_incomplete_gamma(s, x) - std::lgamma(s));
}

/// Upper tail of the chi-square distribution with one degree of freedom.
inline double chi_square_1_sf(double y) {
    if (y <= 0.0) return 1.0;
    return std::erfc(std::sqrt(0.5 * y));
}

struct OptimizerConfig {
    int max_iterations = 5000;
    double absolute_tolerance = 1e-10;  // spread of objective values across the simplex
    double initial_step = 0.25;

    void validate() const {
        if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
        if (!(absolute_tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: absolute_tolerance must be > 0");
        if (!(initial_step > 0.0)) throw std::invalid_argument("OptimizerConfig: initial_step must be > 0");
    }
};

struct MinimizeResult {
    std::vector<double> argmin;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

class OptimizerError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead simplex minimization. Non-finite objective values are treated
/// as +inf, so infeasible regions simply repel the simplex.
inline MinimizeResult minimize(const Objective& objective, std::vector<double> initial,
                               const OptimizerConfig& config = {}) {
    config.validate();
    const std::size_t k = initial.size();
    if (k == 0) throw std::invalid_argument("minimize: empty starting point");

    auto eval = [&](const std::vector<double>& v) {
        const double f = objective(v);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> simplex(k + 1, initial);
    for (std::size_t i = 0; i < k; ++i) {
        const double step = initial[i] != 0.0 ? config.initial_step * std::max(1.0, std::fabs(initial[i]))
                                              : config.initial_step;
        simplex[i + 1][i] += step;
    }
    std::vector<double> fv(k + 1);
    for (std::size_t i = 0; i <= k; ++i) fv[i] = eval(simplex[i]);
    if (std::none_of(fv.begin(), fv.end(), [](double f) { return std::isfinite(f); })) {
        throw OptimizerError("minimize: objective non-finite over the initial simplex");
    }

    std::vector<std::size_t> order(k + 1);
    std::vector<double> centroid(k), trial(k), trial2(k);
    MinimizeResult result;
    const double xtol = std::sqrt(config.absolute_tolerance);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        for (std::size_t i = 0; i <= k; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[k - 1];

        double fspread = fv[worst] - fv[best];
        double xspread = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                xspread = std::max(xspread, std::fabs(simplex[i][j] - simplex[best][j]));
            }
        }
        result.iterations = iter;
        if (std::isfinite(fspread) && fspread <= config.absolute_tolerance && xspread <= xtol) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= k; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < k; ++j) centroid[j] += simplex[i][j] / static_cast<double>(k);
        }
        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t j = 0; j < k; ++j) out[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
        };

        along(-1.0, trial);
        const double fr = eval(trial);
        if (fr < fv[best]) {
            along(-2.0, trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                fv[worst] = fe;
            } else {
                simplex[worst] = trial;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = trial;
            fv[worst] = fr;
            continue;
        }
        if (fr < fv[worst]) {
            along(-0.5, trial2);  // outside contraction
            const double fc = eval(trial2);
            if (fc <= fr) {
                simplex[worst] = trial2;
                fv[worst] = fc;
                continue;
            }
        } else {
            along(0.5, trial2);  // inside contraction
            const double fc = eval(trial2);
            if (fc < fv[worst]) {
                simplex[worst] = trial2;
                fv[worst] = fc;
                continue;
            }
        }
        for (std::size_t i = 0; i <= k; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < k; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            fv[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(fv.begin(), fv.end());
    result.argmin = simplex[static_cast<std::size_t>(best_it - fv.begin())];
    result.value = *best_it;
    return result;
}

}  // namespace heavytail
