#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/uiid.hpp"

using namespace osw;

TEST_CASE("shipped distributions validate and expose their menus") {
    for (TypeDistribution d : {uiid_matching(), uiid_stochastic(), uiid_budgets()}) {
        validate_distribution(d);
        CHECK(!flatten_menu(d).empty());
        CHECK(d.horizon >= 1);
    }
    CHECK(flatten_menu(uiid_matching()).size() == 2);
    CHECK(flatten_menu(uiid_stochastic()).size() == 3);
    CHECK(flatten_menu(uiid_budgets()).size() == 4);
}

TEST_CASE("distribution validation rejects malformed data") {
    TypeDistribution d = uiid_matching();
    d.types[0].weight = rat(1, 4);  // weights no longer sum to 1
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);

    d = uiid_matching();
    d.horizon = 0;
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);

    d = uiid_matching();
    d.types[1].menu[0].id = "ca";  // duplicate id across types
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);

    d = uiid_matching();
    d.budgets.erase("a");
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);

    d = uiid_matching();
    d.bids["a"]["ghost"] = Rat(1);
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);

    d = uiid_matching();
    d.types[0].menu[0].resources = {"ghost"};
    CHECK_THROWS_AS(validate_distribution(d), ValidationError);
}

TEST_CASE("budget-additive count objective") {
    BudgetCountOracle f(rat(3, 2), {Rat(1), rat(1, 2)});
    CHECK(f.evaluate({0, 0}) == Rat(0));
    CHECK(f.evaluate({1, 0}) == Rat(1));
    CHECK(f.evaluate({1, 1}) == rat(3, 2));
    CHECK(f.evaluate({2, 2}) == rat(3, 2));  // capped
    CHECK(f.marginal(1, {1, 0}) == rat(1, 2));
    CHECK(f.marginal(0, {1, 1}) == Rat(0));  // already at the budget
    CHECK_THROWS_AS((void)f.evaluate({1}), ValidationError);
    CHECK_THROWS_AS((void)f.evaluate({-1, 0}), ValidationError);
}

TEST_CASE("count objectives only credit engaged type-configs") {
    auto oracles = multiset_oracles(uiid_stochastic());
    REQUIRE(oracles.size() == 2);
    // Resource r earns from cr and cm but never from cs.
    CHECK(oracles[0].evaluate({1, 0, 0}) == Rat(1));  // cr
    CHECK(oracles[0].evaluate({0, 1, 0}) == Rat(0));  // cs belongs to s
    CHECK(oracles[0].evaluate({0, 0, 1}) == Rat(1));  // cm
    CHECK(oracles[1].evaluate({0, 2, 0}) == Rat(1));  // 2 * 1/2 hits the budget
}

TEST_CASE("every shipped objective has diminishing returns on counts") {
    for (TypeDistribution d : {uiid_matching(), uiid_stochastic(), uiid_budgets()}) {
        PropertyReport rep = dr_report(d);
        CHECK(rep.holds);
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("path sampling is exact and reproducible") {
    TypeDistribution d = uiid_matching();
    Rng a(11), b(11);
    CHECK(sample_path(d, a) == sample_path(d, b));

    // Point mass: a single type is always drawn.
    TypeDistribution point = uiid_matching();
    point.types[0].weight = Rat(1);
    point.types[1].weight = Rat(0);
    Rng rng(5);
    for (int k = 0; k < 20; ++k)
        for (int t : sample_path(point, rng)) CHECK(t == 0);

    // Frequencies track the weights (1/2 each; ~4 sigma margin).
    long first = 0, draws = 0;
    Rng freq(77);
    for (int k = 0; k < 5000; ++k)
        for (int t : sample_path(d, freq)) {
            ++draws;
            if (t == 0) ++first;
        }
    CHECK(draws == 20000);
    CHECK(first > 10000 - 300);
    CHECK(first < 10000 + 300);
}

TEST_CASE("a sampled path realizes as an ordinary instance") {
    TypeDistribution d = uiid_stochastic();
    Instance inst = realize_path(d, {0, 1, 0});
    CHECK(inst.num_arrivals() == 3);
    CHECK(inst.arrival_model() == ArrivalModel::Uiid);
    // Arrival 2 draws the "safe" type with its two-config menu.
    CHECK(inst.menu(0).size() == 1);
    CHECK(inst.menu(1).size() == 2);
    CHECK(inst.config(inst.config_index("cr@1")).arrival == 0);
    CHECK(inst.config_index("cm@2") >= 0);
    CHECK(inst.p(0, inst.config_index("cr@1")) == rat(1, 2));
    CHECK(inst.p(1, inst.config_index("cs@2")) == Rat(1));

    // Set-level value of a realization equals the count-level objective.
    auto counts = multiset_oracles(d);
    ElementSet both({inst.config_index("cr@1"), inst.config_index("cs@2")});
    CHECK(inst.objective(0).evaluate(both) == counts[0].evaluate({1, 0, 0}));
    CHECK(inst.objective(1).evaluate(both) == counts[1].evaluate({0, 1, 0}));

    CHECK_THROWS_AS(realize_path(d, {0, 7}), ValidationError);
}

TEST_CASE("greedy on a sampled path is deterministic in the seed") {
    TypeDistribution d = uiid_stochastic();
    CHECK(run_uiid_greedy(d, 123) == run_uiid_greedy(d, 123));
}

TEST_CASE("ratio estimation basics") {
    TypeDistribution d = uiid_matching();
    CHECK_THROWS_AS(estimate_ratio(d, 0, 1), ValidationError);

    RatioEstimate est = estimate_ratio(d, 200, 42);
    CHECK(est.trials == 200);
    CHECK(static_cast<long long>(est.per_trial.size()) == est.trials);
    CHECK(est.distinct_paths <= est.trials);
    CHECK(est.distinct_paths <= 16);  // 2^4 possible type sequences
    CHECK(est.per_path_half);
    CHECK(est.ratio > 0.5);
    CHECK(est.ratio <= 1.0);
    CHECK(est.lower99 <= est.ratio);
    for (const auto& [alg, optc] : est.per_trial) CHECK(Rat(2) * alg >= optc);

    RatioEstimate again = estimate_ratio(d, 200, 42);
    CHECK(again.mean_alg == est.mean_alg);
    CHECK(again.mean_optc == est.mean_optc);
}

TEST_CASE("deterministic matching fixture achieves ratio one") {
    // Both types engage disjoint unit-budget resources with p = 1; greedy is
    // optimal on every path.
    RatioEstimate est = estimate_ratio(uiid_matching(), 100, 7);
    CHECK(est.mean_alg == est.mean_optc);
    CHECK(est.ratio == 1.0);
}
