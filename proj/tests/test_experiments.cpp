#include <cmath>
#include <numeric>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "heavytail/experiments.hpp"

using namespace heavytail;
using namespace heavytail::corpus;
using Catch::Approx;

namespace {

WordList language(const std::string& key, std::vector<std::string> forms) {
    WordList wl;
    wl.family = "F";
    wl.doculect = key;
    wl.iso = key;
    int item = 1;
    for (auto& f : forms) wl.entries.push_back({item++, "i", std::move(f), false});
    return wl;
}

}  // namespace

TEST_CASE("rank regression on a Zipf-like column") {
    const std::vector<double> v{10000, 2500, 1111, 625, 400};
    const auto r = rank_regression(v);
    CHECK(r.alpha_sp == Approx(2.0).margin(0.01));
    CHECK(r.r_squared > 0.999);
    CHECK(r.points == 5);
}

TEST_CASE("exact power laws are recovered") {
    std::vector<double> x, y;
    for (int i = 1; i <= 30; ++i) {
        x.push_back(i);
        y.push_back(7.0 * std::pow(i, -1.37));
    }
    const auto r = loglog_regression(x, y);
    CHECK(r.alpha_sp == Approx(1.37).epsilon(1e-6));
    CHECK(r.intercept == Approx(std::log(7.0)).epsilon(1e-6));
    CHECK(r.r_squared == Approx(1.0).epsilon(1e-12));
    CHECK(r.slope() == -r.alpha_sp);
    std::vector<double> shuffled(y.rbegin(), y.rend());
    CHECK(rank_regression(shuffled).alpha_sp == Approx(1.37).epsilon(1e-6));
}

TEST_CASE("regression errors") {
    CHECK_THROWS_AS(rank_regression(std::vector<double>{5, 5, 5}), DegenerateDataError);
    CHECK_THROWS_AS(rank_regression(std::vector<double>{5, 4}), InsufficientDataError);
    CHECK_THROWS_AS(loglog_regression(std::vector<double>{1, 1}, std::vector<double>{2, 3}), DegenerateDataError);
    CHECK_THROWS_AS(loglog_regression(std::vector<double>{1, 2}, std::vector<double>{0, 3}), std::domain_error);
}

TEST_CASE("growth with every language equals the full profile") {
    const std::vector<WordList> lists{language("a", {"pata", "kim"}), language("b", {"tapu"}),
                                      language("c", {"mosi", "pa"}), language("d", {"lulu"})};
    const auto prep = prepare(lists, 3, TokenizeMode::Raw);
    const auto curve = growth_curves(prep.units, prep.index, "F", 5, 3);
    REQUIRE(curve.points.size() == 4);
    FamilyCorpus all;
    all.lists = lists;
    const auto full = ngram_profile(all, 3);
    const auto& last = curve.points.back();
    for (int n = 1; n <= 3; ++n) {
        CHECK(last.mean_per_n[n - 1] == static_cast<double>(full.count(n)));
        CHECK(last.sem_per_n[n - 1] == 0.0);
    }
    CHECK(last.mean_cumulative[2] == static_cast<double>(full.cumulative(3)));
    // means never decrease with sample size
    for (int n = 1; n <= 3; ++n) {
        const auto s = curve.series(n);
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1] - 1e-12);
    }
}

TEST_CASE("identical languages give a flat curve") {
    const std::vector<WordList> lists{language("a", {"ab"}), language("b", {"ab"}), language("c", {"ab"})};
    const auto prep = prepare(lists, 2, TokenizeMode::Raw,
                              [] {
                                  Alphabet a;
                                  a.declare('a', SymbolClass::Vowel);
                                  a.declare('b', SymbolClass::Consonant);
                                  return a;
                              }());
    const auto curve = growth_curves(prep.units, prep.index, "F", 4, 1);
    for (const auto& p : curve.points) CHECK(p.mean_cumulative[1] == 3.0);
    CHECK(quartile_slope_ratio(curve.series(1)) == 0.0);
}

TEST_CASE("disjoint alphabets grow linearly") {
    std::vector<WordList> lists;
    const std::string symbols = "pbmfvtdszcnkgxqhlwyr";
    for (std::size_t i = 0; i < 10; ++i) lists.push_back(language("L" + std::to_string(i), {symbols.substr(2 * i, 2)}));
    const auto prep = prepare(lists, 2, TokenizeMode::Raw);
    const auto curve = growth_curves(prep.units, prep.index, "F", 3, 2);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].mean_per_n[0] == 2.0 * static_cast<double>(i + 1));
        CHECK(curve.points[i].mean_per_n[1] == static_cast<double>(i + 1));
    }
    CHECK(quartile_slope_ratio(curve.series(1)) == Approx(1.0));
}

TEST_CASE("growth curves are reproducible") {
    std::vector<WordList> lists;
    for (int i = 0; i < 8; ++i) lists.push_back(language("L" + std::to_string(i), {std::string("pa") + "tikum"[i % 5], "mo"}));
    FamilyCorpus fam;
    fam.name = "F";
    fam.lists = lists;
    const auto a = growth_curves(fam, 10, 77, 3);
    const auto b = growth_curves(fam, 10, 77, 3);
    std::ostringstream sa, sb;
    write_growth_tsv(sa, a);
    write_growth_tsv(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(growth_summary(a) == growth_summary(b));
    const auto prep = prepare(lists, 3, TokenizeMode::Raw);
    CHECK_THROWS_AS(growth_curves(prep.units, prep.index, "F", 0, 1), ConfigurationError);
    CHECK_THROWS_AS(growth_curves({prep.units[0]}, prep.index, "F", 1, 1), InsufficientDataError);
}

TEST_CASE("random samples") {
    std::vector<WordList> lists;
    for (int i = 0; i < 12; ++i) lists.push_back(language("L" + std::to_string(i), {std::string("ka") + "ptsmnl"[i % 6] + "o"}));
    const auto prep = prepare(lists, 3, TokenizeMode::Raw);
    const std::vector<std::size_t> whole{12};
    const auto r = random_sample_experiment(prep.units, prep.index, whole, 5);
    FamilyCorpus all;
    all.lists = lists;
    CHECK(r.cumulative[0][2] == static_cast<double>(ngram_profile(all, 3).cumulative(3)));
    CHECK(r.regressions.empty());

    const std::vector<std::size_t> sizes{2, 4, 8, 12};
    const auto a = random_sample_experiment(prep.units, prep.index, sizes, 9, 3);
    const auto b = random_sample_experiment(prep.units, prep.index, sizes, 9, 3);
    CHECK(a.cumulative == b.cumulative);
    CHECK(a.regressions.size() == 3);
    std::ostringstream sa, sb;
    write_random_sample_tsv(sa, a);
    write_random_sample_tsv(sb, b);
    CHECK(sa.str() == sb.str());
    const std::vector<std::size_t> too_big{13};
    CHECK_THROWS_AS(random_sample_experiment(prep.units, prep.index, too_big, 1), std::domain_error);
}

TEST_CASE("sampling without replacement has no repeats") {
    Rng rng = make_rng(3);
    for (int t = 0; t < 200; ++t) {
        auto idx = heavytail::detail::sample_without_replacement(rng, 30, 17);
        std::sort(idx.begin(), idx.end());
        CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
        CHECK(idx.back() < 30);
    }
}

TEST_CASE("quartile slope ratio") {
    const std::vector<double> lin{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(quartile_slope_ratio(lin) == Approx(1.0));
    const std::vector<double> sat{0, 10, 15, 17, 18, 18, 18, 18};
    CHECK(quartile_slope_ratio(sat) == 0.0);
    const std::vector<double> log_curve{0, 6.93, 10.99, 13.86, 16.09, 17.92, 19.46, 20.79};
    CHECK(quartile_slope_ratio(log_curve) == Approx((20.79 - 19.46) / 6.93));
}

TEST_CASE("saturated random-sample series give a flat regression") {
    std::vector<WordList> lists;
    for (int i = 0; i < 6; ++i) lists.push_back(language("L" + std::to_string(i), {"pa"}));
    const auto prep = prepare(lists, 2, TokenizeMode::Raw);
    const std::vector<std::size_t> sizes{1, 3, 6};
    const auto r = random_sample_experiment(prep.units, prep.index, sizes, 1);
    REQUIRE(r.regressions.size() == 2);
    CHECK(r.regressions[0].alpha_sp == 0.0);
    CHECK(std::isnan(r.regressions[0].r_squared));
    CHECK(random_sample_summary(r)["regressions"][0]["r_squared"].is_null());
}
