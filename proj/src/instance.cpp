#include "osw/instance.hpp"

#include <algorithm>
#include <set>

#include "osw/oracles.hpp"

namespace osw {

bool Configuration::engages(int resource) const {
    return std::binary_search(resources.begin(), resources.end(), resource);
}

ElementSet::ElementSet(std::vector<int> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ElementSet::contains(int e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

void ElementSet::insert(int e) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e) elems_.insert(it, e);
}

void ElementSet::erase(int e) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it != elems_.end() && *it == e) elems_.erase(it);
}

ElementSet ElementSet::with(int e) const {
    ElementSet out = *this;
    out.insert(e);
    return out;
}

ElementSet ElementSet::unite(const ElementSet& other) const {
    std::vector<int> merged;
    merged.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(merged));
    ElementSet out;
    out.elems_ = std::move(merged);
    return out;
}

Rat InstanceCore::p(int resource, int e) const {
    const Configuration& c = configs.at(static_cast<std::size_t>(e));
    const auto& res = c.resources;
    auto it = std::lower_bound(res.begin(), res.end(), resource);
    if (it == res.end() || *it != resource) return Rat(0);
    return activation.marginals.at(static_cast<std::size_t>(e))
        .at(static_cast<std::size_t>(it - res.begin()));
}

bool InstanceCore::is_subfeasible(const ElementSet& S) const {
    int last_arrival = -1;
    for (int e : S.elems()) {
        if (e < 0 || e >= static_cast<int>(configs.size()))
            throw ValidationError("element outside the configuration set");
        int t = configs[static_cast<std::size_t>(e)].arrival;
        if (t == last_arrival) return false;
        last_arrival = t;
    }
    return true;
}

ElementSet InstanceCore::restrict_to(const ElementSet& S, int resource) const {
    ElementSet out;
    for (int e : S.elems())
        if (configs.at(static_cast<std::size_t>(e)).engages(resource)) out.insert(e);
    return out;
}

ElementSet Allocation::elements() const {
    ElementSet out;
    for (const auto& [t, e] : choice) out.insert(e);
    return out;
}

namespace {

OutcomeTable expand_independent(const Configuration& config, const std::vector<Rat>& marginals) {
    OutcomeTable table;
    const std::size_t k = config.resources.size();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        Rat prob(1);
        for (std::size_t j = 0; j < k; ++j) {
            if (mask & (1u << j))
                prob *= marginals[j];
            else
                prob *= Rat(1) - marginals[j];
        }
        if (prob != 0) table.outcomes.emplace_back(mask, prob);
    }
    return table;
}

}  // namespace

CorePtr Instance::build_core(const InstanceData& data) {
    auto core = std::make_shared<InstanceCore>();
    core->name = data.name;

    if (data.num_arrivals < 0) throw ValidationError("negative arrival count");
    core->num_arrivals = data.num_arrivals;

    core->resources = data.resources;
    for (std::size_t i = 0; i < core->resources.size(); ++i) {
        const auto& name = core->resources[i].name;
        if (name.empty()) throw ValidationError("resource with empty name");
        if (!core->resource_by_name.emplace(name, static_cast<int>(i)).second)
            throw ValidationError("duplicate resource name: " + name);
    }

    if (!data.arrival_times.empty()) {
        if (static_cast<int>(data.arrival_times.size()) != data.num_arrivals)
            throw ValidationError("arrival time count does not match arrival count");
        for (int t = 0; t + 1 < data.num_arrivals; ++t)
            if (!(data.arrival_times[static_cast<std::size_t>(t)] <
                  data.arrival_times[static_cast<std::size_t>(t) + 1]))
                throw ValidationError("arrival times not strictly increasing");
        for (const auto& a : data.arrival_times)
            if (a < 0) throw ValidationError("negative arrival time");
        core->arrival_times = data.arrival_times;
    }

    // Configurations, sorted by (arrival, id); ties within an arrival break by id.
    std::vector<Configuration> configs;
    for (const auto& cs : data.configurations) {
        Configuration c;
        c.id = cs.id;
        if (c.id.empty()) throw ValidationError("configuration with empty id");
        if (cs.arrival < 1 || cs.arrival > data.num_arrivals)
            throw ValidationError("configuration " + cs.id + " has arrival out of range");
        c.arrival = cs.arrival - 1;
        if (cs.resources.empty())
            throw ValidationError("configuration " + cs.id + " has empty resource set");
        std::set<int> rs;
        for (const auto& rname : cs.resources) {
            auto it = core->resource_by_name.find(rname);
            if (it == core->resource_by_name.end())
                throw ValidationError("configuration " + cs.id + " references unknown resource " +
                                      rname);
            rs.insert(it->second);
        }
        c.resources.assign(rs.begin(), rs.end());
        c.revealed = cs.revealed;
        configs.push_back(std::move(c));
    }
    std::sort(configs.begin(), configs.end(), [](const Configuration& a, const Configuration& b) {
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.id < b.id;
    });
    core->configs = std::move(configs);
    core->menus.assign(static_cast<std::size_t>(data.num_arrivals), {});
    core->owned.assign(core->resources.size(), {});
    for (std::size_t e = 0; e < core->configs.size(); ++e) {
        const auto& c = core->configs[e];
        if (!core->config_by_id.emplace(c.id, static_cast<int>(e)).second)
            throw ValidationError("duplicate configuration id: " + c.id);
        core->menus[static_cast<std::size_t>(c.arrival)].push_back(static_cast<int>(e));
        for (int i : c.resources)
            core->owned[static_cast<std::size_t>(i)].push_back(static_cast<int>(e));
    }

    // Activation: absent spec means deterministic (all resources active).
    core->activation.per_config.resize(core->configs.size());
    core->activation.marginals.resize(core->configs.size());
    for (std::size_t e = 0; e < core->configs.size(); ++e) {
        const auto& c = core->configs[e];
        auto it = data.activation.find(c.id);
        std::vector<Rat> marg(c.resources.size(), Rat(1));
        if (it == data.activation.end()) {
            OutcomeTable table;
            table.outcomes.emplace_back((1u << c.resources.size()) - 1u, Rat(1));
            core->activation.per_config[e] = std::move(table);
        } else {
            const ActivationSpec& spec = it->second;
            if (spec.kind == ActivationSpec::Kind::Independent) {
                for (const auto& [rname, p] : spec.marginals) {
                    auto rit = core->resource_by_name.find(rname);
                    if (rit == core->resource_by_name.end())
                        throw ValidationError("activation for " + c.id +
                                              " references unknown resource " + rname);
                    auto pos =
                        std::lower_bound(c.resources.begin(), c.resources.end(), rit->second);
                    if (pos == c.resources.end() || *pos != rit->second)
                        throw ValidationError("activation for " + c.id + " names resource " +
                                              rname + " outside its configuration");
                    if (p < 0 || p > 1)
                        throw ValidationError("activation probability out of [0,1] for " + c.id);
                    marg[static_cast<std::size_t>(pos - c.resources.begin())] = p;
                }
                core->activation.per_config[e] = expand_independent(c, marg);
            } else {
                OutcomeTable table;
                Rat total(0);
                std::set<std::uint32_t> seen_masks;
                bool has_empty = false;
                for (const auto& [names, prob] : spec.joint) {
                    if (prob < 0)
                        throw ValidationError("negative joint probability for " + c.id);
                    std::uint32_t mask = 0;
                    for (const auto& rname : names) {
                        auto rit = core->resource_by_name.find(rname);
                        if (rit == core->resource_by_name.end())
                            throw ValidationError("joint table for " + c.id +
                                                  " references unknown resource " + rname);
                        auto pos =
                            std::lower_bound(c.resources.begin(), c.resources.end(), rit->second);
                        if (pos == c.resources.end() || *pos != rit->second)
                            throw ValidationError("joint table for " + c.id +
                                                  " names resource " + rname +
                                                  " outside its configuration");
                        mask |= 1u << (pos - c.resources.begin());
                    }
                    if (!seen_masks.insert(mask).second)
                        throw ValidationError("duplicate joint outcome for " + c.id);
                    if (mask == 0) has_empty = true;
                    total += prob;
                    if (prob != 0) table.outcomes.emplace_back(mask, prob);
                }
                if (total > 1) throw ValidationError("joint probabilities exceed 1 for " + c.id);
                if (has_empty) {
                    if (total != 1)
                        throw ValidationError("joint probabilities do not sum to 1 for " + c.id);
                } else if (total < 1) {
                    table.outcomes.emplace_back(0u, Rat(1) - total);
                }
                std::sort(table.outcomes.begin(), table.outcomes.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                for (std::size_t j = 0; j < c.resources.size(); ++j) {
                    Rat p(0);
                    for (const auto& [mask, prob] : table.outcomes)
                        if (mask & (1u << j)) p += prob;
                    marg[j] = p;
                }
                core->activation.per_config[e] = std::move(table);
            }
        }
        core->activation.marginals[e] = std::move(marg);
    }
    for (const auto& [id, spec] : data.activation)
        if (!core->config_by_id.count(id))
            throw ValidationError("activation for unknown configuration: " + id);

    return core;
}

Instance Instance::build(const InstanceData& data) {
    Instance inst;
    inst.core_ = build_core(data);
    inst.data_ = data;
    inst.arrival_model_ = data.arrival_model;

    // Objectives: exactly one per non-dummy resource; dummies are zero.
    inst.objectives_.resize(inst.core_->resources.size());
    std::set<int> covered;
    for (const auto& [rname, spec] : data.objectives) {
        auto rit = inst.core_->resource_by_name.find(rname);
        if (rit == inst.core_->resource_by_name.end())
            throw ValidationError("objective for unknown resource: " + rname);
        int i = rit->second;
        if (!covered.insert(i).second)
            throw ValidationError("duplicate objective for resource: " + rname);
        if (inst.core_->resources[static_cast<std::size_t>(i)].dummy)
            throw ValidationError("dummy resources carry no objective: " + rname);
        if (!spec) throw ValidationError("null objective spec for resource: " + rname);
        inst.objectives_[static_cast<std::size_t>(i)] = build_oracle(inst.core_, i, *spec);
    }
    for (std::size_t i = 0; i < inst.core_->resources.size(); ++i) {
        if (inst.core_->resources[i].dummy) {
            inst.objectives_[i] = build_oracle(inst.core_, static_cast<int>(i), ObjectiveSpec{});
        } else if (!inst.objectives_[i]) {
            throw ValidationError("missing objective for resource: " +
                                  inst.core_->resources[i].name);
        }
    }
    return inst;
}

Instance Instance::build_with_oracles(const InstanceData& data,
                                      std::vector<std::shared_ptr<const ValueOracle>> oracles) {
    Instance inst;
    inst.core_ = build_core(data);
    inst.data_ = data;
    inst.arrival_model_ = data.arrival_model;
    if (oracles.size() != inst.core_->resources.size())
        throw ValidationError("oracle count does not match resource count");
    for (const auto& o : oracles)
        if (!o) throw ValidationError("null oracle");
    inst.objectives_ = std::move(oracles);
    return inst;
}

Instance Instance::build_with_oracles(const InstanceData& data, const OracleFactory& make) {
    Instance inst;
    inst.core_ = build_core(data);
    inst.data_ = data;
    inst.arrival_model_ = data.arrival_model;
    auto oracles = make(inst.core_);
    if (oracles.size() != inst.core_->resources.size())
        throw ValidationError("oracle count does not match resource count");
    for (const auto& o : oracles)
        if (!o) throw ValidationError("null oracle");
    inst.objectives_ = std::move(oracles);
    return inst;
}

const Rat& Instance::arrival_time(int t) const {
    if (!core_->has_arrival_times()) throw ValidationError("instance has no arrival times");
    return core_->arrival_times.at(static_cast<std::size_t>(t));
}

const ValueOracle& Instance::objective(int i) const {
    return *objectives_.at(static_cast<std::size_t>(i));
}

int Instance::config_index(const std::string& id) const {
    auto it = core_->config_by_id.find(id);
    if (it == core_->config_by_id.end()) throw ValidationError("unknown configuration id: " + id);
    return it->second;
}

int Instance::resource_index(const std::string& name) const {
    auto it = core_->resource_by_name.find(name);
    if (it == core_->resource_by_name.end())
        throw ValidationError("unknown resource name: " + name);
    return it->second;
}

bool is_subfeasible(const ElementSet& S, const Instance& inst) {
    return inst.core()->is_subfeasible(S);
}

ElementSet restrict_to(const ElementSet& S, int resource, const Instance& inst) {
    return inst.core()->restrict_to(S, resource);
}

InstanceData sr_ex_data() {
    InstanceData d;
    d.name = "sr-ex";
    d.resources = {{"1", false}, {"2", false}};
    d.num_arrivals = 2;
    d.configurations = {{"e1_1", 1, {"1"}, false},
                        {"e1_2", 2, {"1"}, false},
                        {"e2_2", 2, {"2"}, false}};
    ActivationSpec a1;
    a1.marginals = {{"1", rat(1, 2)}};
    ActivationSpec a2;
    a2.marginals = {{"1", Rat(1)}};
    ActivationSpec a3;
    a3.marginals = {{"2", rat(1, 2)}};
    d.activation = {{"e1_1", a1}, {"e1_2", a2}, {"e2_2", a3}};
    d.objectives = {{"1", coverage_spec()}, {"2", coverage_spec()}};
    return d;
}

InstanceData reuse_ex_data() {
    InstanceData d;
    d.name = "reuse-ex";
    d.resources = {{"1", false}};
    d.num_arrivals = 3;
    d.arrival_times = {Rat(1), Rat(2), Rat(3)};
    d.configurations = {{"e1_1", 1, {"1"}, false},
                        {"e1_2", 2, {"1"}, false},
                        {"e1_3", 3, {"1"}, false}};
    d.objectives = {{"1", reusable_spec(rat(3, 2))}};
    return d;
}

Instance sr_ex() { return Instance::build(sr_ex_data()); }
Instance reuse_ex() { return Instance::build(reuse_ex_data()); }

}  // namespace osw
