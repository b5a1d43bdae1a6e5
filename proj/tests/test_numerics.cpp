#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "heavytail/numerics.hpp"

using namespace heavytail;
using Catch::Approx;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Γ(s, x) by tanh-sinh style quadrature on [x, ∞).
double quad_upper_gamma(double s, double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([s, x](double u) {
        const double t = x + u;
        return std::isfinite(t) ? std::exp((s - 1.0) * std::log(t) - t) : 0.0;
    }, 0.0,
                                std::numeric_limits<double>::infinity(), 1e-14);
}

}  // namespace

TEST_CASE("log_gamma closed forms") {
    CHECK(log_gamma(1.0) == Approx(0.0).margin(1e-14));
    CHECK(log_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma recurrence on [0.5, 100]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.5, 100.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        CHECK(std::fabs(log_gamma(x + 1.0) - (log_gamma(x) + std::log(x))) <= 1e-10 * std::max(1.0, log_gamma(x + 1.0)));
    }
}

TEST_CASE("log_gamma absolute accuracy over [1e-6, 1e6]") {
    for (double x : {1e-6, 1e-3, 0.1, 0.7, 1.5, 3.3, 17.0, 123.4, 1e4, 1e6}) {
        CHECK(std::fabs(log_gamma(x) - boost::math::lgamma(x)) <= 1e-10 * std::max(1.0, std::fabs(boost::math::lgamma(x))));
    }
}

TEST_CASE("upper_incomplete_gamma closed forms") {
    for (double x : {0.0, 0.3, 2.0, 7.5, 40.0}) {
        CHECK(upper_incomplete_gamma(1.0, x) == Approx(std::exp(-x)).epsilon(1e-12));
    }
    CHECK(upper_incomplete_gamma(1.0, 2.0) == Approx(0.1353352832366127).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(0.5, 0.0) == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // Γ(1/2, x) = √π erfc(√x)
    for (double x : {0.01, 0.7, 3.0, 30.0}) {
        CHECK(upper_incomplete_gamma(0.5, x) == Approx(std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x))).epsilon(1e-10));
    }
}

TEST_CASE("upper_incomplete_gamma(-0.5, 1) against quadrature") {
    const double oracle = quad_upper_gamma(-0.5, 1.0);
    CHECK(rel_err(upper_incomplete_gamma(-0.5, 1.0), oracle) <= 1e-8);
}

TEST_CASE("upper_incomplete_gamma matches quadrature on s in [-20, 20], x in (0, 100]") {
    for (double s : {-20.0, -12.5, -7.3, -3.0, -1.5, -1.0, -0.75, -0.5, -0.2, 0.0, 0.25, 0.5, 1.0, 2.6, 7.0, 14.2, 20.0}) {
        for (double x : {0.05, 0.3, 1.0, 2.5, 10.0, 35.0, 100.0}) {
            const double oracle = quad_upper_gamma(s, x);
            INFO("s = " << s << ", x = " << x);
            CHECK(rel_err(upper_incomplete_gamma(s, x), oracle) <= 1e-8);
        }
    }
}

TEST_CASE("upper_incomplete_gamma recurrence for s in (0, 5), x in (0.1, 50)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> us(0.0, 5.0), ux(0.1, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double s = us(rng), x = ux(rng);
        const double lhs = s * upper_incomplete_gamma(s, x) + std::pow(x, s) * std::exp(-x);
        CHECK(rel_err(lhs, upper_incomplete_gamma(s + 1.0, x)) <= 1e-8);
    }
}

TEST_CASE("downward recurrence holds for negative s") {
    for (double s : {-0.3, -1.7, -4.2, -9.9}) {
        for (double x : {0.02, 0.5, 3.0, 20.0}) {
            const double lhs = (upper_incomplete_gamma(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
            CHECK(rel_err(upper_incomplete_gamma(s, x), lhs) <= 1e-8);
        }
    }
}

TEST_CASE("log form stays finite where the value underflows") {
    const double v = log_upper_incomplete_gamma(2.0, 2000.0);
    // Γ(2, x) = (x + 1) e^{-x}
    CHECK(v == Approx(std::log(2001.0) - 2000.0).epsilon(1e-12));
    CHECK(std::isfinite(log_upper_incomplete_gamma(-3.5, 900.0)));
}

TEST_CASE("upper_incomplete_gamma domain errors") {
    CHECK_THROWS_AS(upper_incomplete_gamma(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(-1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(std::nan(""), 1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("erfc values and reflection") {
    CHECK(heavytail::erfc(0.0) == 1.0);
    boost::math::quadrature::exp_sinh<double> integrator;
    const double oracle = 2.0 / std::sqrt(std::numbers::pi) *
                          integrator.integrate([](double u) { return std::exp(-(1.0 + u) * (1.0 + u)); }, 0.0,
                                               std::numeric_limits<double>::infinity(), 1e-14);
    CHECK(rel_err(heavytail::erfc(1.0), oracle) <= 1e-10);
    CHECK(heavytail::erfc(1.0) == Approx(0.1572992).epsilon(1e-6));
    for (double x = -10.0; x <= 10.0; x += 0.37) {
        CHECK(std::fabs(heavytail::erfc(x) + heavytail::erfc(-x) - 2.0) <= 1e-10 * 2.0);
    }
    CHECK_THROWS_AS(heavytail::erfc(std::nan("")), std::domain_error);
}

TEST_CASE("log_erfc continues past underflow") {
    CHECK(log_erfc(3.0) == Approx(std::log(std::erfc(3.0))).epsilon(1e-13));
    CHECK(log_erfc(19.9) == Approx(std::log(std::erfc(19.9))).epsilon(1e-12));
    // leading asymptotic term at x = 40
    CHECK(log_erfc(40.0) == Approx(-1600.0 - std::log(40.0 * std::sqrt(std::numbers::pi)) + std::log1p(-1.0 / 3200.0)).epsilon(1e-9));
    CHECK(log_erfc(-std::numeric_limits<double>::infinity()) == Approx(std::log(2.0)));
}

TEST_CASE("hurwitz zeta") {
    CHECK(hurwitz_zeta(2.0, 1.0) == Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-13));
    // ζ(s, q) - ζ(s, q + 1) = q^{-s}
    for (double s : {1.1, 1.6, 2.5, 4.0}) {
        for (double q : {1.0, 7.0, 1074.0}) {
            CHECK(hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0) == Approx(std::pow(q, -s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("chi-square(1) survival") {
    CHECK(chi_square_1_sf(0.0) == 1.0);
    CHECK(chi_square_1_sf(3.841458820694124) == Approx(0.05).epsilon(1e-9));
}

TEST_CASE("minimize quadratics") {
    auto r1 = minimize([](const std::vector<double>& v) { return (v[0] - 3.0) * (v[0] - 3.0); }, {0.0});
    CHECK(r1.converged);
    CHECK(r1.argmin[0] == Approx(3.0).margin(1e-4));
    CHECK(r1.value == Approx(0.0).margin(1e-9));
    auto r2 = minimize([](const std::vector<double>& v) { return (v[0] - 1.0) * (v[0] - 1.0) + (v[1] + 2.0) * (v[1] + 2.0); },
                       {0.0, 0.0});
    CHECK(r2.argmin[0] == Approx(1.0).margin(1e-4));
    CHECK(r2.argmin[1] == Approx(-2.0).margin(1e-4));
}

TEST_CASE("minimize Rosenbrock, checked against a dense grid") {
    auto rosen = [](const std::vector<double>& v) {
        return 100.0 * (v[1] - v[0] * v[0]) * (v[1] - v[0] * v[0]) + (1.0 - v[0]) * (1.0 - v[0]);
    };
    const auto r = minimize(rosen, {-1.2, 1.0});
    // grid oracle near the optimum
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> at{0, 0};
    for (int i = -400; i <= 400; ++i) {
        for (int j = -400; j <= 400; ++j) {
            std::vector<double> p{1.0 + i * 1e-4, 1.0 + j * 1e-4};
            const double f = rosen(p);
            if (f < best) best = f, at = p;
        }
    }
    CHECK(std::fabs(r.argmin[0] - at[0]) <= 1e-4);
    CHECK(std::fabs(r.argmin[1] - at[1]) <= 1e-4);
    CHECK(r.converged);
}

TEST_CASE("minimize is deterministic and shift invariant") {
    auto f = [](const std::vector<double>& v) { return std::cosh(v[0] - 0.4) + (v[1] - v[0]) * (v[1] - v[0]); };
    auto g = [&](const std::vector<double>& v) { return f(v) + 1234.5; };
    const auto a = minimize(f, {2.0, -1.0});
    const auto b = minimize(f, {2.0, -1.0});
    const auto c = minimize(g, {2.0, -1.0});
    CHECK(a.argmin == b.argmin);
    CHECK(a.argmin[0] == Approx(c.argmin[0]).margin(1e-4));
    CHECK(a.argmin[1] == Approx(c.argmin[1]).margin(1e-4));
}

TEST_CASE("minimize failure signals") {
    CHECK_THROWS_AS(minimize([](const std::vector<double>&) { return std::nan(""); }, {1.0, 1.0}), OptimizerError);
    OptimizerConfig tight;
    tight.max_iterations = 3;
    const auto r = minimize([](const std::vector<double>& v) { return v[0] * v[0] + v[1] * v[1]; }, {5.0, 5.0}, tight);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
    OptimizerConfig bad;
    bad.absolute_tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
