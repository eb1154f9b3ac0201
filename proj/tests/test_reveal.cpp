#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/reveal.hpp"

using namespace osw;

TEST_CASE("revealed companion of the stochastic fixture") {
    Instance base = sr_ex();
    ConcaveClosureSolution sol = solve_optc(base);
    REQUIRE(sol.value == rat(5, 4));
    RevealedInstance rev = build_reveal(base, sol);

    CHECK(rev.hat.num_arrivals() == 2);
    REQUIRE(rev.reveal_config.size() == 2);
    CHECK(rev.hat.configs().size() == 5);  // 3 originals + one reveal per arrival

    // Arrival 1's engaged set {1} collides with e1_1, so a dummy pads it;
    // arrival 2's engaged set {1, 2} matches no menu configuration.
    const Configuration& h1 = rev.hat.config(rev.reveal_config[0]);
    const Configuration& h2 = rev.hat.config(rev.reveal_config[1]);
    CHECK(h1.revealed);
    CHECK(h2.revealed);
    REQUIRE(h1.resources.size() == 2);
    CHECK(rev.hat.resources()[static_cast<std::size_t>(h1.resources[0])].name == "1");
    CHECK(rev.hat.resources()[static_cast<std::size_t>(h1.resources[1])].dummy);
    REQUIRE(h2.resources.size() == 2);
    CHECK(rev.hat.resources()[static_cast<std::size_t>(h2.resources[0])].name == "1");
    CHECK(rev.hat.resources()[static_cast<std::size_t>(h2.resources[1])].name == "2");

    // The companion is deterministic.
    for (std::size_t e = 0; e < rev.hat.configs().size(); ++e)
        for (int i : rev.hat.config(static_cast<int>(e)).resources)
            CHECK(rev.hat.p(i, static_cast<int>(e)) == Rat(1));

    // Index maps are mutually inverse on the real part.
    for (std::size_t e = 0; e < rev.hat.configs().size(); ++e)
        if (rev.base_index[e] >= 0)
            CHECK(rev.hat_index[static_cast<std::size_t>(rev.base_index[e])] ==
                  static_cast<int>(e));

    RevealReport rep = verify_reveal(rev);
    CHECK(rep.holds);
    CHECK(rep.greedy_value_equal);
    CHECK(rep.greedy_real_only);
    CHECK(rep.per_step_dominance);
    CHECK(rep.opt_dominates);
    CHECK(rep.value_identities);
    CHECK(rep.monotone_so_ok);
    CHECK(rep.submodular_preserved);
    CHECK(rep.note.empty());
}

TEST_CASE("taking every revealed configuration recovers the relaxation value") {
    Instance base = sr_ex();
    ConcaveClosureSolution sol = solve_optc(base);
    RevealedInstance rev = build_reveal(base, sol);
    ElementSet nhat{std::vector<int>(rev.reveal_config)};
    Rat total(0);
    for (std::size_t i = 0; i < rev.hat.resources().size(); ++i)
        total += g_value(rev, static_cast<int>(i), nhat);
    CHECK(total == sol.value);
}

TEST_CASE("companion objectives agree with the base expectation on real sets") {
    Instance base = sr_ex();
    RevealedInstance rev = build_reveal(base, solve_optc(base));
    // g_i restricted to N equals F_i; spot-check a few sets directly.
    for (std::vector<int> raw : {std::vector<int>{}, {0}, {0, 1}, {0, 2}}) {
        std::vector<int> hat_elems;
        for (int b : raw) hat_elems.push_back(rev.hat_index[static_cast<std::size_t>(b)]);
        ElementSet Zb(std::move(raw));
        ElementSet Zh(std::move(hat_elems));
        for (std::size_t i = 0; i < base.resources().size(); ++i)
            CHECK(g_value(rev, static_cast<int>(i), Zh) ==
                  expected_value(static_cast<int>(i), Zb, base));
    }
}

TEST_CASE("reveal of a deterministic instance") {
    Instance base = reuse_ex();
    ConcaveClosureSolution sol = solve_optc(base);
    CHECK(sol.value == Rat(2));
    RevealedInstance rev = build_reveal(base, sol);
    RevealReport rep = verify_reveal(rev);
    CHECK(rep.holds);
    // The base objective is not submodular, so preservation is vacuous and
    // must not be reported as a failure.
    CHECK(rep.submodular_preserved);
}

TEST_CASE("reveal with zero activation everywhere") {
    InstanceData d = sr_ex_data();
    for (auto& [id, spec] : d.activation)
        for (auto& [rname, p] : spec.marginals) p = Rat(0);
    Instance base = Instance::build(d);
    ConcaveClosureSolution sol = solve_optc(base);
    CHECK(sol.value == Rat(0));
    RevealedInstance rev = build_reveal(base, sol);
    // No resource is engaged, so every reveal configuration is a pure dummy.
    for (int he : rev.reveal_config) {
        const Configuration& cfg = rev.hat.config(he);
        REQUIRE(cfg.resources.size() == 1);
        CHECK(rev.hat.resources()[static_cast<std::size_t>(cfg.resources[0])].dummy);
    }
    CHECK(verify_reveal(rev).holds);
}

TEST_CASE("mismatched relaxation solutions are rejected") {
    Instance base = sr_ex();
    ConcaveClosureSolution sol = solve_optc(reuse_ex());
    CHECK_THROWS_AS(build_reveal(base, sol), ValidationError);
}
