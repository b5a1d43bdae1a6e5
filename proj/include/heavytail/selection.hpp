#pragma once

// Model comparison on a shared tail: AIC and likelihood-ratio tests of each
// candidate against the power law.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/fitting.hpp"
#include "heavytail/numerics.hpp"

namespace heavytail {

inline constexpr double kSignificanceLevel = 0.1;

/// 2m - 2 ln L, or m - ln L when halved.
inline double aic(double log_likelihood, int m, bool halved) {
    if (m < 1) throw std::domain_error("aic: parameter count must be >= 1");
    const double h = static_cast<double>(m) - log_likelihood;
    return halved ? h : 2.0 * h;
}

enum class Favored { PowerLaw, Candidate, Undecided };

constexpr std::string_view favored_name(Favored f) {
    switch (f) {
        case Favored::PowerLaw: return "power_law";
        case Favored::Candidate: return "candidate";
        case Favored::Undecided: return "undecided";
    }
    return "?";
}

struct LrtResult {
    ModelKind candidate;
    double R;  // ln L(PL) - ln L(candidate)
    double p;
    Favored favored;
    bool significant;
    bool nested;

    /// Table-style signed p: negative when the candidate is favored.
    double signed_p() const { return favored == Favored::Candidate ? -p : p; }
};

struct CandidateResult {
    ModelKind kind;
    TailFit fit;
    double aic_full;
    double aic_halved;
};

/// Likelihood-ratio test of `cand_fit` against `pl_fit` on the same tail.
/// Non-nested: normalized ratio with p = erfc(|R| / sqrt(2 n sigma^2)), sigma^2
/// the variance of the pointwise log-ratios. Nested: R is compared with the
/// chi-square(1) distribution at 2 max(-R, 0).
inline LrtResult likelihood_ratio_test(std::span<const double> tail, const TailFit& pl_fit, const TailFit& cand_fit,
                                       bool nested) {
    if (pl_fit.x_min != cand_fit.x_min || pl_fit.n_tail != cand_fit.n_tail || tail.size() != pl_fit.n_tail) {
        throw ContractViolation("likelihood_ratio_test: fits are not on the same tail");
    }
    const std::size_t n = tail.size();
    std::vector<double> d(n);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = log_pdf(pl_fit.model, tail[i]) - log_pdf(cand_fit.model, tail[i]);
        r += d[i];
    }
    LrtResult out{cand_fit.kind(), r, 1.0, Favored::Undecided, false, nested};
    if (r == 0.0) return out;
    out.favored = r > 0.0 ? Favored::PowerLaw : Favored::Candidate;
    if (nested) {
        out.p = chi_square_1_sf(2.0 * std::max(-r, 0.0));
    } else {
        const double mean = r / static_cast<double>(n);
        double var = 0.0;
        for (double x : d) var += (x - mean) * (x - mean);
        var /= static_cast<double>(n);
        if (!(var > 0.0)) {
            throw DegenerateDataError("likelihood_ratio_test: log-ratio has zero variance but R != 0");
        }
        out.p = erfc(std::fabs(r) / std::sqrt(2.0 * static_cast<double>(n) * var));
    }
    out.significant = out.p <= kSignificanceLevel;
    return out;
}

struct CompareOptions {
    ScanOptions scan{};
    /// Give every candidate its own KS-selected x_min. The tails then differ,
    /// so no likelihood-ratio tests are run.
    bool rescan_each = false;
    /// Use this lower bound for the PL fit instead of scanning.
    std::optional<double> fixed_x_min;
};

struct ComparisonReport {
    std::string label;
    Support support = Support::Continuous;
    double x_min = 0.0;
    std::size_t n_tail = 0;
    double alpha_est = 0.0;
    double log_likelihood = 0.0;  // of the PL fit
    std::vector<CandidateResult> candidates;  // all six, in kAllModels order
    std::vector<LrtResult> lrts;  // five, PL excluded
    ModelKind best_by_aic = ModelKind::PowerLaw;

    const CandidateResult& candidate(ModelKind kind) const {
        for (const auto& c : candidates) {
            if (c.kind == kind) return c;
        }
        throw LookupError("ComparisonReport: no result for " + std::string(short_name(kind)));
    }
    const LrtResult& lrt(ModelKind kind) const {
        for (const auto& l : lrts) {
            if (l.candidate == kind) return l;
        }
        throw LookupError("ComparisonReport: no likelihood-ratio test for " + std::string(short_name(kind)));
    }
};

namespace detail {

template <class Fn>
auto with_label(const std::string& label, Fn&& fn) -> decltype(fn()) {
    const std::string prefix = label.empty() ? std::string() : label + ": ";
    try {
        return fn();
    } catch (const DegenerateDataError& e) {
        throw DegenerateDataError(prefix + e.what());
    } catch (const InsufficientDataError& e) {
        throw InsufficientDataError(prefix + e.what());
    } catch (const OptimizerError& e) {
        throw OptimizerError(prefix + e.what());
    } catch (const ContractViolation& e) {
        throw ContractViolation(prefix + e.what());
    } catch (const std::domain_error& e) {
        throw std::domain_error(prefix + e.what());
    }
}

}  // namespace detail

/// PL x_min scan, then every candidate on that tail, AICs, LRTs and the best model.
inline ComparisonReport compare_all(const SizeDataset& data, const CompareOptions& options = {}) {
    return detail::with_label(data.label(), [&] {
        ComparisonReport report;
        report.label = data.label();
        report.support = options.scan.support;
        const TailFit pl = options.fixed_x_min
                               ? fixed_xmin_fit(data, ModelKind::PowerLaw, *options.fixed_x_min, options.scan.support,
                                                options.scan.optimizer)
                               : scan_xmin(data, ModelKind::PowerLaw, options.scan);
        report.x_min = pl.x_min;
        report.n_tail = pl.n_tail;
        report.alpha_est = pl.model.param(0);
        report.log_likelihood = pl.log_likelihood;

        for (ModelKind kind : kAllModels) {
            TailFit fit = kind == ModelKind::PowerLaw ? pl
                          : options.rescan_each   ? scan_xmin(data, kind, options.scan)
                                                  : fixed_xmin_fit(data, kind, pl.x_min, options.scan.support,
                                                                   options.scan.optimizer);
            const int m = parameter_count(kind);
            report.candidates.push_back(
                {kind, fit, aic(fit.log_likelihood, m, false), aic(fit.log_likelihood, m, true)});
        }
        if (!options.rescan_each) {
            const auto tail = data.tail(pl.x_min);
            for (const auto& c : report.candidates) {
                if (c.kind == ModelKind::PowerLaw) continue;
                report.lrts.push_back(
                    likelihood_ratio_test(tail, pl, c.fit, c.kind == ModelKind::PowerLawWithCutoff));
            }
        }
        const auto best = std::min_element(report.candidates.begin(), report.candidates.end(),
                                           [](const auto& a, const auto& b) { return a.aic_halved < b.aic_halved; });
        report.best_by_aic = best->kind;
        return report;
    });
}

}  // namespace heavytail
