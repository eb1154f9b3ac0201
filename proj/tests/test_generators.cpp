#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/generators.hpp"

using namespace osw;

namespace {

GeneratorSpec small(const std::string& family, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.family = family;
    spec.resources = 2;
    spec.arrivals = 3;
    spec.menu_max = 2;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("every family produces a structurally sound instance") {
    for (const char* family : {"obm", "stochastic-rewards", "assortment-mnl", "patience",
                               "reusable", "wholepage", "random-explicit"}) {
        Instance inst = gen(small(family, 3));
        CHECK(inst.num_arrivals() == 3);
        CHECK(inst.configs().size() > 0);
        for (int t = 0; t < inst.num_arrivals(); ++t) CHECK(!inst.menu(t).empty());
        // Activation tables are proper distributions with in-range marginals.
        for (std::size_t e = 0; e < inst.configs().size(); ++e) {
            Rat total(0);
            for (const auto& [mask, prob] : inst.activation().per_config[e].outcomes) {
                CHECK(prob >= 0);
                total += prob;
            }
            CHECK(total == Rat(1));
            for (int i : inst.config(static_cast<int>(e)).resources) {
                CHECK(inst.p(i, static_cast<int>(e)) >= 0);
                CHECK(inst.p(i, static_cast<int>(e)) <= 1);
            }
        }
        // Generation is deterministic in the seed.
        CHECK(serialize_instance(gen(small(family, 3))) == serialize_instance(inst));
    }
}

TEST_CASE("deterministic families activate with probability one") {
    GeneratorSpec spec = small("obm", 9);
    Instance inst = gen(spec);
    for (std::size_t e = 0; e < inst.configs().size(); ++e)
        for (int i : inst.config(static_cast<int>(e)).resources)
            CHECK(inst.p(i, static_cast<int>(e)) == Rat(1));

    spec = small("stochastic-rewards", 9);
    spec.allow_p_one_only = true;
    inst = gen(spec);
    for (std::size_t e = 0; e < inst.configs().size(); ++e)
        for (int i : inst.config(static_cast<int>(e)).resources)
            CHECK(inst.p(i, static_cast<int>(e)) == Rat(1));
}

TEST_CASE("choice-model activation tables") {
    ActivationSpec a = mnl_activation({{"r1", Rat(1)}, {"r2", Rat(1)}}, Rat(1));
    CHECK(a.kind == ActivationSpec::Kind::Joint);
    REQUIRE(a.joint.size() == 2);
    for (const auto& [active, prob] : a.joint) {
        CHECK(active.size() == 1);
        CHECK(prob == rat(1, 3));
    }

    // Zero-weight options are dropped from the support.
    a = mnl_activation({{"r1", rat(1, 2)}, {"r2", Rat(0)}}, rat(1, 2));
    REQUIRE(a.joint.size() == 1);
    CHECK(a.joint[0].first == std::vector<std::string>{"r1"});
    CHECK(a.joint[0].second == rat(1, 2));

    CHECK_THROWS_AS(mnl_activation({{"r1", Rat(-1)}}, Rat(1)), ValidationError);
    CHECK_THROWS_AS(mnl_activation({{"r1", Rat(1)}}, Rat(-1)), ValidationError);
    CHECK_THROWS_AS(mnl_activation({{"r1", Rat(0)}}, Rat(0)), ValidationError);
}

TEST_CASE("choice-style families engage at most one resource per outcome") {
    for (const char* family : {"assortment-mnl", "patience"}) {
        Instance inst = gen(small(family, 17));
        for (std::size_t e = 0; e < inst.configs().size(); ++e)
            for (const auto& [mask, prob] : inst.activation().per_config[e].outcomes) {
                int bits = 0;
                for (std::uint32_t m = mask; m; m &= m - 1) ++bits;
                CHECK(bits <= 1);
            }
    }
}

TEST_CASE("reusable family carries arrival times and stays subfeasible") {
    Instance inst = gen(small("reusable", 5));
    REQUIRE(inst.has_arrival_times());
    for (int t = 1; t < inst.num_arrivals(); ++t)
        CHECK(inst.arrival_time(t - 1) < inst.arrival_time(t));
    // At most one configuration per resource per arrival keeps every owned
    // slice inside the reusable oracle's domain.
    for (std::size_t i = 0; i < inst.resources().size(); ++i)
        CHECK(inst.core()->is_subfeasible(ElementSet{
            std::vector<int>(inst.owned(static_cast<int>(i)))}));
}

TEST_CASE("fixture names dispatch to the canonical instances") {
    GeneratorSpec spec;
    spec.fixture = "sr-ex";
    CHECK(serialize_instance(gen(spec)) == serialize_instance(sr_ex()));
    spec.fixture = "reuse-ex";
    CHECK(serialize_instance(gen(spec)) == serialize_instance(reuse_ex()));
    spec.fixture = "ghost";
    CHECK_THROWS_AS(gen(spec), ValidationError);
}

TEST_CASE("generator input validation") {
    GeneratorSpec spec = small("no-such-family", 1);
    CHECK_THROWS_AS(gen(spec), ValidationError);
    spec = small("obm", 1);
    spec.resources = 0;
    CHECK_THROWS_AS(gen(spec), ValidationError);
    spec = small("patience", 1);
    spec.resources = 4;
    CHECK_THROWS_AS(gen(spec), ValidationError);
}

TEST_CASE("full pipeline report on the stochastic fixture") {
    StageSet stages;
    stages.reveal = true;
    ExperimentReport rep = run_experiment(sr_ex(), stages, "fixture");
    CHECK(rep.row.instance_id == "sr-ex");
    CHECK(rep.row.family == "fixture");
    CHECK(rep.row.alg == Rat(1));
    CHECK(rep.row.opt == Rat(1));
    CHECK(rep.row.aopt == rat(5, 4));
    CHECK(rep.row.optc == rat(5, 4));
    CHECK(rep.row.ratio_alg_optc == rat(4, 5));
    CHECK(rep.row.cert_ok);
    CHECK(rep.row.checks_ok);
    CHECK(rep.chain_ok);
    CHECK(rep.reveal_ok);
    CHECK(rep.note.empty());
}

TEST_CASE("stage selection leaves skipped columns empty") {
    StageSet stages;
    stages.aopt = false;
    stages.optc = false;
    stages.certificate = false;
    stages.properties = false;
    ExperimentReport rep = run_experiment(reuse_ex(), stages);
    CHECK(rep.row.alg == Rat(2));
    CHECK(rep.row.opt == Rat(2));
    CHECK(!rep.row.aopt.has_value());
    CHECK(!rep.row.optc.has_value());
    CHECK(!rep.row.ratio_alg_optc.has_value());
    CHECK(rep.chain_ok);
}

TEST_CASE("a short fuzz run finds no violations") {
    FuzzReport rep = fuzz(small("stochastic-rewards", 0), 10, 2024, "", true);
    CHECK(rep.trials == 10);
    CHECK(rep.violations == 0);
    CHECK(rep.rows.size() == 10);
    CHECK(rep.repro_files.empty());
    CHECK(rep.note.empty());
    for (const auto& row : rep.rows) {
        REQUIRE(row.alg.has_value());
        REQUIRE(row.optc.has_value());
        CHECK(Rat(2) * *row.alg >= *row.optc);
    }
}
