#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/instance.hpp"
#include "osw/oracles.hpp"

using namespace osw;

TEST_CASE("element set behaves as a sorted set") {
    ElementSet s(std::vector<int>{3, 1, 3, 2});
    CHECK(s.elems() == std::vector<int>{1, 2, 3});
    CHECK(s.contains(2));
    CHECK(!s.contains(0));
    s.insert(0);
    s.insert(2);  // no duplicate
    CHECK(s.elems() == std::vector<int>{0, 1, 2, 3});
    s.erase(1);
    s.erase(7);  // absent: no-op
    CHECK(s.elems() == std::vector<int>{0, 2, 3});
    CHECK(s.with(5).elems() == std::vector<int>{0, 2, 3, 5});
    CHECK(s.elems() == std::vector<int>{0, 2, 3});  // with() does not mutate
    ElementSet t(std::vector<int>{2, 9});
    CHECK(s.unite(t).elems() == std::vector<int>{0, 2, 3, 9});
}

TEST_CASE("canonical two-arrival fixture structure") {
    Instance inst = sr_ex();
    REQUIRE(inst.configs().size() == 3);
    // Global indices follow (arrival, id) order.
    CHECK(inst.config(0).id == "e1_1");
    CHECK(inst.config(1).id == "e1_2");
    CHECK(inst.config(2).id == "e2_2");
    CHECK(inst.config(0).arrival == 0);
    CHECK(inst.config(1).arrival == 1);
    CHECK(inst.config(2).arrival == 1);
    CHECK(inst.menu(0) == std::vector<int>{0});
    CHECK(inst.menu(1) == std::vector<int>{1, 2});
    CHECK(inst.owned(0) == std::vector<int>{0, 1});
    CHECK(inst.owned(1) == std::vector<int>{2});
    CHECK(inst.config_index("e2_2") == 2);
    CHECK(inst.resource_index("2") == 1);
    CHECK_THROWS_AS((void)inst.config_index("nope"), ValidationError);

    CHECK(inst.p(0, 0) == rat(1, 2));
    CHECK(inst.p(0, 1) == Rat(1));
    CHECK(inst.p(1, 2) == rat(1, 2));
    CHECK(inst.p(1, 0) == Rat(0));  // resource 2 is not engaged by e1_1
}

TEST_CASE("subfeasibility allows at most one configuration per arrival") {
    Instance inst = sr_ex();
    CHECK(is_subfeasible(ElementSet({0, 1}), inst));
    CHECK(is_subfeasible(ElementSet({0, 2}), inst));
    CHECK(!is_subfeasible(ElementSet({1, 2}), inst));
    CHECK(is_subfeasible(ElementSet(), inst));
    CHECK_THROWS_AS((void)is_subfeasible(ElementSet({7}), inst), ValidationError);
    CHECK(restrict_to(ElementSet({0, 1, 2}), 0, inst).elems() == std::vector<int>{0, 1});
    CHECK(restrict_to(ElementSet({0, 1, 2}), 1, inst).elems() == std::vector<int>{2});
}

TEST_CASE("allocation collects chosen elements") {
    Allocation a;
    a.choice[1] = 2;
    a.choice[0] = 0;
    CHECK(a.elements().elems() == std::vector<int>{0, 2});
}

TEST_CASE("joint activation yields consistent marginals") {
    InstanceData d;
    d.name = "joint";
    d.resources = {{"a", false}, {"b", false}};
    d.num_arrivals = 1;
    d.configurations = {{"c", 1, {"a", "b"}, false}};
    ActivationSpec spec;
    spec.kind = ActivationSpec::Kind::Joint;
    spec.joint = {{{"a", "b"}, rat(1, 4)}, {{"a"}, rat(1, 4)}};  // rest: nothing active
    d.activation = {{"c", spec}};
    d.objectives = {{"a", coverage_spec()}, {"b", coverage_spec()}};
    Instance inst = Instance::build(d);
    CHECK(inst.p(0, 0) == rat(1, 2));
    CHECK(inst.p(1, 0) == rat(1, 4));
    Rat total(0);
    for (const auto& [mask, prob] : inst.activation().per_config[0].outcomes) total += prob;
    CHECK(total == Rat(1));
}

TEST_CASE("malformed instance data is rejected") {
    auto base = sr_ex_data;

    InstanceData d = base();
    d.resources.push_back({"1", false});
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.configurations.push_back({"e1_1", 1, {"1"}, false});
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.configurations[0].arrival = 3;
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.configurations[0].resources = {"ghost"};
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.configurations[0].resources.clear();
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.activation["missing"] = ActivationSpec{};
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.activation["e1_1"].marginals["1"] = rat(3, 2);
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.activation["e1_1"].marginals["2"] = rat(1, 2);  // resource outside the config
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.objectives.pop_back();
    CHECK_THROWS_AS(Instance::build(d), ValidationError);

    d = base();
    d.objectives.push_back({"2", coverage_spec()});
    CHECK_THROWS_AS(Instance::build(d), ValidationError);
}

TEST_CASE("joint probabilities must not exceed one") {
    InstanceData d;
    d.name = "bad-joint";
    d.resources = {{"a", false}};
    d.num_arrivals = 1;
    d.configurations = {{"c", 1, {"a"}, false}};
    ActivationSpec spec;
    spec.kind = ActivationSpec::Kind::Joint;
    spec.joint = {{{"a"}, rat(3, 4)}, {{}, rat(1, 2)}};
    d.activation = {{"c", spec}};
    d.objectives = {{"a", coverage_spec()}};
    CHECK_THROWS_AS(Instance::build(d), ValidationError);
}

TEST_CASE("arrival times must be strictly increasing and complete") {
    InstanceData d = reuse_ex_data();
    d.arrival_times = {Rat(1), Rat(1), Rat(3)};
    CHECK_THROWS_AS(Instance::build(d), ValidationError);
    d = reuse_ex_data();
    d.arrival_times.pop_back();
    CHECK_THROWS_AS(Instance::build(d), ValidationError);
    CHECK_THROWS_AS((void)sr_ex().arrival_time(0), ValidationError);
    CHECK(reuse_ex().arrival_time(2) == Rat(3));
}

TEST_CASE("dummy resources carry no objective") {
    InstanceData d = sr_ex_data();
    d.resources.push_back({"d", true});
    Instance inst = Instance::build(d);
    CHECK(inst.objective(2).family() == "zero");

    d.objectives.push_back({"d", coverage_spec()});
    CHECK_THROWS_AS(Instance::build(d), ValidationError);
}
