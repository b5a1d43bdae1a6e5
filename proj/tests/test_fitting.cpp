#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "heavytail/fitting.hpp"

using namespace heavytail;
using Catch::Approx;

namespace {

std::vector<double> draw(const ModelSpec& m, std::size_t n, std::uint64_t seed) { return sample(m, n, seed); }

// Every admissible distinct value, no pruning, no fast path.
TailFit exhaustive_scan(const SizeDataset& data, ModelKind kind, Support support) {
    std::optional<TailFit> best;
    for (double xm : data.distinct_values()) {
        const auto tail = data.tail(xm);
        if (tail.size() < static_cast<std::size_t>(parameter_count(kind) + 1) || tail.back() == tail.front()) break;
        std::optional<TailFit> f;
        try {
            f = fixed_xmin_fit(data, kind, xm, support);
        } catch (const std::exception&) {
            continue;
        }
        if (!best || f->ks_D < best->ks_D) best = f;
    }
    return *best;
}

}  // namespace

TEST_CASE("SizeDataset validation and views") {
    CHECK_THROWS_AS(SizeDataset(std::vector<double>{}), InsufficientDataError);
    CHECK_THROWS_AS(SizeDataset(std::vector<double>{1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(SizeDataset(std::vector<double>{1.0, std::nan("")}), std::domain_error);
    const SizeDataset d({5.0, 1.0, 3.0, 3.0, 2.0}, "x");
    CHECK(d.values() == std::vector<double>{1.0, 2.0, 3.0, 3.0, 5.0});
    CHECK(d.tail(3.0).size() == 3);
    CHECK(d.below(3.0).size() == 2);
    CHECK(d.distinct_values() == std::vector<double>{1.0, 2.0, 3.0, 5.0});
}

TEST_CASE("KS distance of the exact quantile grid is 1/(2n)") {
    const ModelSpec pl(ModelKind::PowerLaw, {2.0, 0}, 1.0);
    for (std::size_t n : {1u, 10u, 257u}) {
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = 1.0 / (1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(n));
        CHECK(ks_statistic(pl, q) <= 0.5 / static_cast<double>(n) + 1e-12);
    }
}

TEST_CASE("KS distance examples") {
    const ModelSpec pl(ModelKind::PowerLaw, {2.0, 0}, 1.0);
    CHECK(ks_statistic(pl, std::vector<double>{1.0}) == Approx(1.0));
    std::vector<double> powers;
    for (int k = 0; k < 10; ++k) powers.push_back(std::ldexp(1.0, k));
    // largest gap: below the fourth point, 0.3 empirical against F(8) = 0.875
    CHECK(ks_statistic(pl, powers) == Approx(0.575).epsilon(1e-12));
    std::vector<double> reversed(powers.rbegin(), powers.rend());
    CHECK(ks_statistic(pl, reversed) == ks_statistic(pl, powers));
    CHECK_THROWS_AS(ks_statistic(pl, std::vector<double>{0.5, 2.0}), std::domain_error);
}

TEST_CASE("discrete KS uses both sides of every jump") {
    const ModelSpec m(ModelKind::Exponential, {0.7, 0}, 1.0, Support::Discrete);
    const std::vector<double> data{1, 1, 1, 2, 2, 4, 7};
    double want = 0.0;
    const double n = 7.0;
    std::size_t i = 0;
    while (i < data.size()) {
        std::size_t j = i;
        while (j < data.size() && data[j] == data[i]) ++j;
        double below = 0.0, at = 0.0;
        for (double k = 1.0; k <= data[i]; k += 1.0) {
            const double p = std::exp(log_pdf(m, k));
            at += p;
            if (k < data[i]) below += p;
        }
        want = std::max({want, std::fabs(j / n - at), std::fabs(i / n - below)});
        i = j;
    }
    CHECK(ks_statistic(m, data) == Approx(want).epsilon(1e-12));
}

TEST_CASE("fixed x_min fit") {
    const SizeDataset d({1.0, 1.0, 1.0});
    const auto f = fixed_xmin_fit(d, ModelKind::PowerLaw, 0.5);
    CHECK(f.model.param(0) == Approx(1.0 + 1.0 / std::numbers::ln2).epsilon(1e-12));
    CHECK(f.model.param(0) == Approx(2.4427).epsilon(1e-4));
    CHECK(f.n_tail == 3);
    CHECK_THROWS_AS(fixed_xmin_fit(d, ModelKind::PowerLaw, 2.0), InsufficientDataError);
}

TEST_CASE("scan finds the global KS minimum (closed-form path)") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto v = draw(ModelSpec(ModelKind::PowerLaw, {2.3, 0}, 3.0), 300, seed);
        const auto body = draw(ModelSpec(ModelKind::Exponential, {1.0, 0}, 1.0), 200, seed + 100);
        v.insert(v.end(), body.begin(), body.end());
        const SizeDataset d(v);
        for (auto kind : {ModelKind::PowerLaw, ModelKind::Exponential}) {
            const auto got = scan_xmin(d, kind);
            const auto want = exhaustive_scan(d, kind, Support::Continuous);
            CHECK(got.x_min == want.x_min);
            CHECK(got.ks_D == Approx(want.ks_D).epsilon(1e-9));
            CHECK(got.ks_D == Approx(ks_statistic(got.model, d.tail(got.x_min))).epsilon(1e-9));
            CHECK(got.n_tail == d.tail(got.x_min).size());
            CHECK(got.log_likelihood == Approx(log_likelihood(got.model, d.tail(got.x_min))).epsilon(1e-10));
        }
    }
}

TEST_CASE("scan finds the global KS minimum (numerical path)") {
    const auto v = draw(ModelSpec(ModelKind::LogNormal, {1.0, 1.0}, 1.0, Support::Discrete), 120, 7);
    const SizeDataset d(v);
    for (auto kind : {ModelKind::PowerLaw, ModelKind::LogNormal}) {
        ScanOptions opt;
        opt.support = Support::Discrete;
        const auto pruned = scan_xmin(d, kind, opt);
        opt.prune = false;
        const auto full = scan_xmin(d, kind, opt);
        const auto want = exhaustive_scan(d, kind, Support::Discrete);
        CHECK(pruned.x_min == full.x_min);
        CHECK(pruned.ks_D == full.ks_D);
        CHECK(pruned.x_min == want.x_min);
        CHECK(pruned.ks_D == Approx(ks_statistic(pruned.model, d.tail(pruned.x_min))).epsilon(1e-12));
    }
}

TEST_CASE("scan tail sizes shrink as x_min grows") {
    const SizeDataset d(draw(ModelSpec(ModelKind::PowerLaw, {2.5, 0}, 1.0), 200, 1));
    std::size_t prev = d.size() + 1;
    for (double xm : d.distinct_values()) {
        const std::size_t n = d.tail(xm).size();
        CHECK(n < prev);
        prev = n;
    }
}

TEST_CASE("sigma threshold restricts the PL scan") {
    const SizeDataset d(draw(ModelSpec(ModelKind::PowerLaw, {2.2, 0}, 5.0, Support::Discrete), 400, 3));
    ScanOptions opt;
    opt.support = Support::Discrete;
    opt.sigma_threshold = 0.1;
    const auto f = scan_xmin(d, ModelKind::PowerLaw, opt);
    CHECK((f.model.param(0) - 1.0) / std::sqrt(static_cast<double>(f.n_tail)) < 0.1);
    // an unattainable threshold falls back to the unrestricted minimum
    opt.sigma_threshold = 1e-9;
    ScanOptions plain;
    plain.support = Support::Discrete;
    CHECK(scan_xmin(d, ModelKind::PowerLaw, opt).x_min == scan_xmin(d, ModelKind::PowerLaw, plain).x_min);
}

TEST_CASE("scan errors") {
    CHECK_THROWS_AS(scan_xmin(SizeDataset({4.0, 4.0, 4.0}), ModelKind::PowerLaw), InsufficientDataError);
    CHECK_THROWS_AS(scan_xmin(SizeDataset({4.0}), ModelKind::LogNormal), InsufficientDataError);
}

TEST_CASE("bootstrap configuration and determinism") {
    const SizeDataset d(draw(ModelSpec(ModelKind::PowerLaw, {2.5, 0}, 1.0), 300, 11));
    const auto fit = scan_xmin(d, ModelKind::PowerLaw);
    CHECK_THROWS_AS(bootstrap_gof(d, fit, 99, 1), ConfigurationError);
    const double a = bootstrap_gof(d, fit, 100, 42);
    CHECK(a == bootstrap_gof(d, fit, 100, 42));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    TailFit perfect = fit;
    perfect.ks_D = 0.0;
    CHECK(bootstrap_gof(d, perfect, 100, 1) == 1.0);
}

TEST_CASE("bootstrap accepts the true model and rejects a misfit") {
    const SizeDataset good(draw(ModelSpec(ModelKind::PowerLaw, {2.5, 0}, 1.0), 1000, 5));
    CHECK(bootstrap_gof(good, scan_xmin(good, ModelKind::PowerLaw), 100, 9) > 0.1);
    // exponential data force-fitted as a power law at its true lower bound
    const SizeDataset bad(draw(ModelSpec(ModelKind::Exponential, {0.5, 0}, 1.0), 5000, 5));
    CHECK(bootstrap_gof(bad, fixed_xmin_fit(bad, ModelKind::PowerLaw, 1.0), 100, 9) < 0.1);
}
