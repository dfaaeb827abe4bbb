#include <catch2/catch_amalgamated.hpp>

#include "netmark/io.hpp"
#include "netmark/stats.hpp"

#include "fixture_constants.hpp"

#include <cmath>

using namespace netmark;
using Catch::Approx;

TEST_CASE("chi-square upper tail matches reference values") {
    for (const auto& ref : fixtures::chi_square_refs) {
        INFO("stat " << ref.stat << " df " << ref.df);
        CHECK(chi_square_sf(ref.stat, ref.df) == Approx(ref.sf).margin(1e-10));
    }
    CHECK(chi_square_sf(-2.0) == 1.0);
    CHECK_THROWS_WITH(chi_square_sf(1.0, 0),
                      Catch::Matchers::ContainsSubstring("df must be at least 1"));
    CHECK_THROWS_WITH(chi_square_sf(std::numeric_limits<double>::quiet_NaN()),
                      Catch::Matchers::ContainsSubstring("finite"));
}

TEST_CASE("Student t upper tail matches reference values") {
    for (const auto& ref : fixtures::t_refs) {
        INFO("stat " << ref.stat << " df " << ref.df);
        CHECK(t_sf(ref.stat, ref.df) == Approx(ref.sf).margin(1e-10));
    }
    // Symmetry around zero.
    CHECK(t_sf(-1.0, 5) == Approx(1.0 - t_sf(1.0, 5)).margin(1e-14));
    CHECK_THROWS_WITH(t_sf(1.0, 0),
                      Catch::Matchers::ContainsSubstring("df must be at least 1"));
    CHECK_THROWS_WITH(t_sf(std::numeric_limits<double>::infinity(), 5),
                      Catch::Matchers::ContainsSubstring("finite"));
}

TEST_CASE("logistic regression of feature flags on setup year") {
    const FeatureTable table = load_features(fixtures::features_path);
    const std::vector<double> years = table.setup_years();
    for (const auto& golden : fixtures::logistic_goldens) {
        INFO("feature " << golden.feature);
        const LogisticFit fit = logistic_fit(years, table.feature_column(golden.feature));
        CHECK(fit.converged);
        CHECK(fit.iterations <= 50);
        CHECK(fit.slope == Approx(golden.slope).margin(1e-9));
        CHECK(fit.intercept == Approx(golden.intercept).margin(1e-5));
        CHECK(fit.odds_ratio == Approx(golden.odds_ratio).margin(1e-9));
        CHECK(fit.lr_statistic == Approx(golden.lr_statistic).margin(1e-5));
        CHECK(fit.p_value == Approx(golden.p_value).margin(1e-5));
        CHECK(fit.r2_nagelkerke == Approx(golden.r2_nagelkerke).margin(1e-5));
        // Newer engines are less likely to carry the feature.
        CHECK(fit.odds_ratio < 1.0);
        CHECK(fit.log_likelihood >= fit.null_log_likelihood);
    }
}

TEST_CASE("logistic regression input validation") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_WITH(logistic_fit(x, {0, 1, 0}),
                      Catch::Matchers::ContainsSubstring("lengths differ"));
    CHECK_THROWS_WITH(logistic_fit({1.0, 2.0}, {0, 1}),
                      Catch::Matchers::ContainsSubstring("at least 3"));
    CHECK_THROWS_WITH(logistic_fit(x, {0, 1, 2, 1}),
                      Catch::Matchers::ContainsSubstring("0 or 1"));
    CHECK_THROWS_WITH(logistic_fit(x, {1, 1, 1, 1}),
                      Catch::Matchers::ContainsSubstring("single-class"));
    CHECK_THROWS_WITH(logistic_fit(x, {0, 0, 0, 0}),
                      Catch::Matchers::ContainsSubstring("single-class"));
    CHECK_THROWS_WITH(
        logistic_fit({1.0, std::numeric_limits<double>::quiet_NaN(), 3.0, 4.0},
                     {0, 1, 0, 1}),
        Catch::Matchers::ContainsSubstring("x values must be finite"));
    CHECK_THROWS_WITH(logistic_fit({5.0, 5.0, 5.0, 5.0}, {0, 1, 0, 1}),
                      Catch::Matchers::ContainsSubstring("singular"));
}

TEST_CASE("perfectly separated data is reported, not returned") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const std::vector<int> y = {0, 0, 0, 1, 1, 1};
    CHECK_THROWS_WITH(logistic_fit(x, y),
                      Catch::Matchers::ContainsSubstring("separation"));
}

TEST_CASE("predicted probabilities come from the fitted coefficients") {
    const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    const std::vector<int> y = {0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1};
    const LogisticFit fit = logistic_fit(x, y);
    REQUIRE(fit.converged);
    for (double v : {0.0, 3.5, 12.0}) {
        const double eta = fit.intercept + fit.slope * v;
        CHECK(predict_probability(fit, v) ==
              Approx(1.0 / (1.0 + std::exp(-eta))).margin(1e-12));
    }
    CHECK(predict_probability(fit, 12.0) > predict_probability(fit, 0.0));
    CHECK_THROWS_WITH(
        predict_probability(fit, std::numeric_limits<double>::quiet_NaN()),
        Catch::Matchers::ContainsSubstring("finite"));
}

TEST_CASE("least squares of reach on setup year") {
    const FeatureTable table = load_features(fixtures::features_path);
    const OlsFit fit = ols_fit(table.setup_years(), table.reach_values());
    CHECK(fit.n == 19);
    CHECK(fit.slope == Approx(fixtures::ols_golden.slope).margin(1e-9));
    CHECK(fit.intercept == Approx(fixtures::ols_golden.intercept).margin(1e-5));
    CHECK(fit.t_stat == Approx(fixtures::ols_golden.t_stat).margin(1e-5));
    CHECK(fit.slope_p_value == Approx(fixtures::ols_golden.p_value).margin(1e-5));
    CHECK(fit.r2 == Approx(fixtures::ols_golden.r2).margin(1e-5));
    CHECK(fit.slope < 0.0);
    CHECK(fit.slope_se > 0.0);
    CHECK(fit.t_stat == Approx(fit.slope / fit.slope_se).margin(1e-9));
}

TEST_CASE("least squares edge cases") {
    SECTION("perfect line") {
        const OlsFit fit = ols_fit({1, 2, 3, 4}, {3, 5, 7, 9});
        CHECK(fit.slope == Approx(2.0).margin(1e-12));
        CHECK(fit.intercept == Approx(1.0).margin(1e-12));
        CHECK(fit.r2 == 1.0);
        CHECK(fit.slope_se == 0.0);
        CHECK(fit.slope_p_value == 0.0);
    }
    SECTION("constant outcome") {
        const OlsFit fit = ols_fit({1, 2, 3, 4}, {5, 5, 5, 5});
        CHECK(fit.slope == Approx(0.0).margin(1e-12));
        CHECK(fit.slope_p_value == 1.0);
        CHECK(fit.r2 == 1.0);
    }
    SECTION("rejected inputs") {
        CHECK_THROWS_WITH(ols_fit({1, 1, 1}, {1, 2, 3}),
                          Catch::Matchers::ContainsSubstring("no variance in regressor"));
        CHECK_THROWS_WITH(ols_fit({1, 2}, {1, 2}),
                          Catch::Matchers::ContainsSubstring("at least 3"));
        CHECK_THROWS_WITH(ols_fit({1, 2, 3}, {1, 2}),
                          Catch::Matchers::ContainsSubstring("lengths differ"));
        CHECK_THROWS_WITH(
            ols_fit({1, 2, std::numeric_limits<double>::infinity()}, {1, 2, 3}),
            Catch::Matchers::ContainsSubstring("finite"));
    }
}

TEST_CASE("feature table validation") {
    const std::vector<std::string> names = {"a_flag", "b_flag"};
    const auto row = [](std::string id, int year, std::vector<int> flags,
                        std::optional<double> reach) {
        return FeatureRow{std::move(id), year, std::move(flags), reach};
    };

    CHECK_NOTHROW(FeatureTable(names, {row("x", 1995, {0, 1}, 10.0)}));
    CHECK_THROWS_WITH(FeatureTable({}, {}),
                      Catch::Matchers::ContainsSubstring("no feature columns"));
    CHECK_THROWS_WITH(FeatureTable({"a", "a"}, {}),
                      Catch::Matchers::ContainsSubstring("duplicate feature 'a'"));
    CHECK_THROWS_WITH(FeatureTable({""}, {}),
                      Catch::Matchers::ContainsSubstring("empty feature name"));
    CHECK_THROWS_WITH(
        FeatureTable(names, {row("x", 1995, {0, 1}, {}), row("x", 1996, {0, 1}, {})}),
        Catch::Matchers::ContainsSubstring("duplicate id 'x'"));
    CHECK_THROWS_WITH(FeatureTable(names, {row("x", 1980, {0, 1}, {})}),
                      Catch::Matchers::ContainsSubstring("[1990, 2005]"));
    CHECK_THROWS_WITH(FeatureTable(names, {row("x", 1995, {0}, {})}),
                      Catch::Matchers::ContainsSubstring("1 flags, expected 2"));
    CHECK_THROWS_WITH(FeatureTable(names, {row("x", 1995, {0, 2}, {})}),
                      Catch::Matchers::ContainsSubstring("must be 0 or 1"));
    CHECK_THROWS_WITH(FeatureTable(names, {row("x", 1995, {0, 1}, 120.0)}),
                      Catch::Matchers::ContainsSubstring("[0, 100]"));

    const FeatureTable table(names, {row("x", 1995, {0, 1}, {})});
    CHECK_THROWS_WITH(table.reach_values(),
                      Catch::Matchers::ContainsSubstring("missing reach_pct for 'x'"));
    CHECK_THROWS_WITH(table.feature_column("zzz"),
                      Catch::Matchers::ContainsSubstring("unknown feature 'zzz'"));
    CHECK(table.feature_column("b_flag") == std::vector<int>{1});
    CHECK(table.setup_years() == std::vector<double>{1995.0});
}

TEST_CASE("fixture feature table layout") {
    const FeatureTable table = load_features(fixtures::features_path);
    CHECK(table.size() == 19);
    CHECK(table.feature_names() ==
          std::vector<std::string>{"non_personalized", "personalized", "platform"});
    // Reach column mirrors the roster file.
    const std::vector<double> reach = table.reach_values();
    for (size_t i = 0; i < reach.size(); ++i)
        CHECK(reach[i] == Approx(fixtures::reach[i]).margin(1e-12));
}
