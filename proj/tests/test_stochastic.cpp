#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/stochastic.hpp"

using namespace osw;

namespace {

// Reference implementation: full 2^|S∩N_i| product-form enumeration without
// any of the library's p∈{0,1} shortcuts.
Rat naive_expected(int resource, const ElementSet& S, const Instance& inst) {
    ElementSet si = restrict_to(S, resource, inst);
    const auto& elems = si.elems();
    Rat total(0);
    for (std::uint32_t mask = 0; mask < (1u << elems.size()); ++mask) {
        Rat weight(1);
        std::vector<int> subset;
        for (std::size_t j = 0; j < elems.size(); ++j) {
            Rat p = inst.p(resource, elems[j]);
            if (mask & (1u << j)) {
                weight *= p;
                subset.push_back(elems[j]);
            } else {
                weight *= Rat(1) - p;
            }
        }
        total += weight * inst.objective(resource).evaluate(ElementSet(std::move(subset)));
    }
    return total;
}

// Three arrivals, probabilities mixing 0, 1 and interior values.
Instance mixed_p_instance() {
    InstanceData d;
    d.name = "mixed";
    d.resources = {{"a", false}};
    d.num_arrivals = 3;
    d.configurations = {{"c1", 1, {"a"}, false},
                        {"c2", 2, {"a"}, false},
                        {"c3", 3, {"a"}, false}};
    ActivationSpec a1, a2, a3;
    a1.marginals = {{"a", rat(1, 3)}};
    a2.marginals = {{"a", Rat(0)}};
    a3.marginals = {{"a", Rat(1)}};
    d.activation = {{"c1", a1}, {"c2", a2}, {"c3", a3}};
    d.objectives = {{"a", budget_additive_spec(
                              rat(3, 2), {{"c1", Rat(1)}, {"c2", Rat(1)}, {"c3", Rat(1)}})}};
    return Instance::build(d);
}

}  // namespace

TEST_CASE("gamma multiplies marginals over the conditioning set") {
    Instance inst = sr_ex();
    CHECK(gamma(ElementSet({0}), ElementSet({0}), 0, inst) == rat(1, 2));
    CHECK(gamma(ElementSet(), ElementSet({0}), 0, inst) == rat(1, 2));
    CHECK(gamma(ElementSet({0, 1}), ElementSet({0, 1}), 0, inst) == rat(1, 2));
    CHECK(gamma(ElementSet({1}), ElementSet({0, 1}), 0, inst) == rat(1, 2));
    CHECK(gamma(ElementSet({0}), ElementSet({0, 1}), 0, inst) == Rat(0));  // p(0,1) = 1
    CHECK(gamma(ElementSet(), ElementSet(), 0, inst) == Rat(1));

    CHECK_THROWS_AS((void)gamma(ElementSet({1}), ElementSet({0}), 0, inst), ValidationError);
    CHECK_THROWS_AS((void)gamma(ElementSet(), ElementSet({1, 2}), 0, inst), ValidationError);
    CHECK_THROWS_AS((void)gamma(ElementSet(), ElementSet({2}), 0, inst), ValidationError);
}

TEST_CASE("expected value matches the reference enumeration") {
    Instance sr = sr_ex();
    Instance mixed = mixed_p_instance();
    for (const Instance* inst : {&sr, &mixed}) {
        const std::size_t n = inst->configs().size();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> elems;
            for (std::size_t e = 0; e < n; ++e)
                if (mask & (1u << e)) elems.push_back(static_cast<int>(e));
            ElementSet S(std::move(elems));
            if (!is_subfeasible(S, *inst)) continue;
            for (std::size_t i = 0; i < inst->resources().size(); ++i)
                CHECK(expected_value(static_cast<int>(i), S, *inst) ==
                      naive_expected(static_cast<int>(i), S, *inst));
        }
    }
}

TEST_CASE("expected marginal equals the value difference") {
    Instance inst = mixed_p_instance();
    const std::size_t n = inst.configs().size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> elems;
        for (std::size_t e = 0; e < n; ++e)
            if (mask & (1u << e)) elems.push_back(static_cast<int>(e));
        ElementSet S(std::move(elems));
        if (!is_subfeasible(S, inst)) continue;
        for (std::size_t e = 0; e < n; ++e) {
            if (S.contains(static_cast<int>(e))) continue;
            if (!is_subfeasible(S.with(static_cast<int>(e)), inst)) continue;
            CHECK(expected_marginal(0, static_cast<int>(e), S, inst) ==
                  expected_value(0, S.with(static_cast<int>(e)), inst) -
                      expected_value(0, S, inst));
        }
    }
}

TEST_CASE("known expected values on the stochastic fixture") {
    Instance inst = sr_ex();
    CHECK(expected_value(0, ElementSet(), inst) == Rat(0));
    CHECK(expected_value(0, ElementSet({0}), inst) == rat(1, 2));
    CHECK(expected_value(0, ElementSet({0, 1}), inst) == Rat(1));
    CHECK(expected_value(1, ElementSet({2}), inst) == rat(1, 2));
    CHECK(expected_marginal(0, 1, ElementSet({0}), inst) == rat(1, 2));
    CHECK(expected_marginal(1, 2, ElementSet({0}), inst) == rat(1, 2));
    CHECK(welfare_marginal(2, ElementSet({0}), inst) == rat(1, 2));
    // e1_2 engages only resource 1, so the welfare marginal is F_1's.
    CHECK(welfare_marginal(1, ElementSet({0}), inst) == rat(1, 2));
    CHECK(expected_marginal(1, 0, ElementSet(), inst) == Rat(0));  // not engaged
}

TEST_CASE("marginal preconditions") {
    Instance inst = sr_ex();
    CHECK_THROWS_AS((void)expected_marginal(0, 0, ElementSet({0}), inst), ValidationError);
    CHECK_THROWS_AS((void)expected_marginal(0, 1, ElementSet({2}), inst), ValidationError);
    // The owned slice itself must be subfeasible.
    InstanceData d;
    d.name = "pair";
    d.resources = {{"a", false}};
    d.num_arrivals = 1;
    d.configurations = {{"c1", 1, {"a"}, false}, {"c2", 1, {"a"}, false}};
    d.objectives = {{"a", coverage_spec()}};
    Instance pair = Instance::build(d);
    CHECK_THROWS_AS((void)expected_value(0, ElementSet({0, 1}), pair), ValidationError);
}

TEST_CASE("outcome sampling follows the joint table") {
    Instance inst = sr_ex();
    Rng rng(42);
    // e1_2 is deterministic.
    for (int k = 0; k < 10; ++k) CHECK(sample_outcome(1, inst, rng).active_mask == 1u);

    long hits = 0;
    const long trials = 20000;
    for (long k = 0; k < trials; ++k)
        if (sample_outcome(0, inst, rng).active_mask & 1u) ++hits;
    // p = 1/2; allow ~4.3 sigma around the mean.
    CHECK(hits > trials / 2 - 300);
    CHECK(hits < trials / 2 + 300);

    ActivationOutcome out = sample_outcome(2, inst, rng);
    if (out.active_mask) CHECK(out.active_resources(inst) == std::vector<int>{1});
}

TEST_CASE("sampling is reproducible by seed") {
    Instance inst = sr_ex();
    Rng a(7), b(7);
    for (int k = 0; k < 100; ++k)
        CHECK(sample_outcome(0, inst, a).active_mask == sample_outcome(0, inst, b).active_mask);
}
