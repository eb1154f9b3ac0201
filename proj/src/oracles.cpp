#include "osw/oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace osw {

Rat ValueOracle::marginal(int e, const ElementSet& S) const {
    if (S.contains(e)) throw ValidationError("marginal of an element already in the set");
    return evaluate(S.with(e)) - evaluate(S);
}

namespace {

using Domain = ValueOracle::Domain;

class ZeroOracle final : public ValueOracle {
public:
    explicit ZeroOracle(int owner) : ValueOracle(owner, Domain::Full) {}
    std::string family() const override { return "zero"; }
    Rat evaluate(const ElementSet&) const override { return Rat(0); }
};

class CoverageOracle final : public ValueOracle {
public:
    CoverageOracle(int owner, CorePtr core)
        : ValueOracle(owner, Domain::Full), core_(std::move(core)) {}
    std::string family() const override { return "coverage"; }
    Rat evaluate(const ElementSet& S) const override {
        for (int e : S.elems())
            if (core_->configs[static_cast<std::size_t>(e)].engages(owner())) return Rat(1);
        return Rat(0);
    }

private:
    CorePtr core_;
};

class BudgetAdditiveOracle final : public ValueOracle {
public:
    BudgetAdditiveOracle(int owner, CorePtr core, Rat budget, std::vector<Rat> bids)
        : ValueOracle(owner, Domain::Full),
          core_(std::move(core)),
          budget_(std::move(budget)),
          bids_(std::move(bids)) {}
    std::string family() const override { return "budget_additive"; }
    Rat evaluate(const ElementSet& S) const override {
        Rat total(0);
        for (int e : S.elems())
            if (core_->configs[static_cast<std::size_t>(e)].engages(owner()))
                total += bids_[static_cast<std::size_t>(e)];
        return std::min(budget_, total);
    }

private:
    CorePtr core_;
    Rat budget_;
    std::vector<Rat> bids_;  // indexed by global configuration
};

class WeightedConfigOracle final : public ValueOracle {
public:
    WeightedConfigOracle(int owner, CorePtr core, std::vector<Rat> weights, bool free_disposal,
                         int capacity)
        : ValueOracle(owner, Domain::Full),
          core_(std::move(core)),
          weights_(std::move(weights)),
          free_disposal_(free_disposal),
          capacity_(capacity) {}
    std::string family() const override { return "weighted_config"; }
    Rat evaluate(const ElementSet& S) const override {
        std::vector<Rat> owned_weights;
        for (int e : S.elems())
            if (core_->configs[static_cast<std::size_t>(e)].engages(owner()))
                owned_weights.push_back(weights_[static_cast<std::size_t>(e)]);
        if (!free_disposal_) {
            Rat total(0);
            for (const auto& w : owned_weights) total += w;
            return total;
        }
        std::sort(owned_weights.begin(), owned_weights.end(), std::greater<Rat>());
        Rat total(0);
        for (std::size_t k = 0;
             k < owned_weights.size() && k < static_cast<std::size_t>(capacity_); ++k)
            total += owned_weights[k];
        return total;
    }

private:
    CorePtr core_;
    std::vector<Rat> weights_;
    bool free_disposal_;
    int capacity_;
};

class ExplicitTableOracle final : public ValueOracle {
public:
    ExplicitTableOracle(int owner, CorePtr core, std::vector<Rat> by_mask)
        : ValueOracle(owner, Domain::Full), core_(std::move(core)), by_mask_(std::move(by_mask)) {}
    std::string family() const override { return "explicit_table"; }
    Rat evaluate(const ElementSet& S) const override {
        const auto& ni = core_->owned[static_cast<std::size_t>(owner())];
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < ni.size(); ++j)
            if (S.contains(ni[j])) mask |= 1u << j;
        return by_mask_[mask];
    }

private:
    CorePtr core_;
    std::vector<Rat> by_mask_;  // indexed by mask over N_i positions
};

class ReusableOracle final : public ValueOracle {
public:
    ReusableOracle(int owner, CorePtr core, Rat duration)
        : ValueOracle(owner, Domain::SubfeasibleOnly),
          core_(std::move(core)),
          duration_(std::move(duration)) {}
    std::string family() const override { return "reusable"; }
    Rat evaluate(const ElementSet& S) const override {
        ElementSet si = core_->restrict_to(S, owner());
        if (!core_->is_subfeasible(si))
            throw ValidationError("reusable oracle evaluated on an infeasible set");
        ElementSet matched;
        bool busy = false;
        Rat free_at(0);
        for (int e : si.elems()) {
            const Rat& at =
                core_->arrival_times.at(static_cast<std::size_t>(core_->configs[static_cast<std::size_t>(e)].arrival));
            if (!busy || at >= free_at) {
                matched.insert(e);
                busy = true;
                free_at = at + duration_;
            }
        }
        return Rat(static_cast<long>(matched.size()));
    }

private:
    CorePtr core_;
    Rat duration_;
};

class SumOracle final : public ValueOracle {
public:
    SumOracle(int owner, std::vector<std::pair<Rat, std::shared_ptr<const ValueOracle>>> parts,
              Domain domain)
        : ValueOracle(owner, domain), parts_(std::move(parts)) {}
    std::string family() const override { return "sum"; }
    Rat evaluate(const ElementSet& S) const override {
        Rat total(0);
        for (const auto& [weight, part] : parts_) total += weight * part->evaluate(S);
        return total;
    }

private:
    std::vector<std::pair<Rat, std::shared_ptr<const ValueOracle>>> parts_;
};

std::vector<Rat> weights_by_config(const InstanceCore& core, int owner,
                                   const std::map<std::string, Rat>& by_id, const char* what) {
    std::vector<Rat> out(core.configs.size(), Rat(0));
    for (const auto& [id, w] : by_id) {
        if (w < 0) throw ValidationError(std::string("negative ") + what + " for " + id);
        auto it = core.config_by_id.find(id);
        if (it == core.config_by_id.end())
            throw ValidationError(std::string("unknown configuration key: ") + id);
        int e = it->second;
        if (!core.configs[static_cast<std::size_t>(e)].engages(owner))
            throw ValidationError(std::string(what) + " keyed by configuration " + id +
                                  " not owned by the oracle's resource");
        out[static_cast<std::size_t>(e)] = w;
    }
    return out;
}

}  // namespace

std::pair<int, ElementSet> matching_process(const Instance& inst, int owner, const ElementSet& S,
                                            const Rat& duration) {
    if (!inst.has_arrival_times())
        throw ValidationError("matching process requires arrival times");
    if (duration <= 0) throw ValidationError("usage duration must be positive");
    ElementSet si = restrict_to(S, owner, inst);
    if (!is_subfeasible(si, inst))
        throw ValidationError("matching process requires a subfeasible set");
    ElementSet matched;
    bool busy = false;
    Rat free_at(0);
    for (int e : si.elems()) {  // ascending order is arrival order
        const Rat& at = inst.arrival_time(inst.config(e).arrival);
        if (!busy || at >= free_at) {
            matched.insert(e);
            busy = true;
            free_at = at + duration;
        }
    }
    return {static_cast<int>(matched.size()), matched};
}

std::shared_ptr<const ValueOracle> build_oracle(const CorePtr& core, int owner,
                                                const ObjectiveSpec& spec) {
    using Family = ObjectiveSpec::Family;
    switch (spec.family) {
        case Family::Zero:
            return std::make_shared<ZeroOracle>(owner);
        case Family::Coverage:
            return std::make_shared<CoverageOracle>(owner, core);
        case Family::BudgetAdditive: {
            if (spec.budget < 0) throw ValidationError("negative budget");
            return std::make_shared<BudgetAdditiveOracle>(
                owner, core, spec.budget, weights_by_config(*core, owner, spec.weights, "bid"));
        }
        case Family::WeightedConfig: {
            if (spec.free_disposal && spec.capacity < 1)
                throw ValidationError("free-disposal capacity must be at least 1");
            return std::make_shared<WeightedConfigOracle>(
                owner, core, weights_by_config(*core, owner, spec.weights, "weight"),
                spec.free_disposal, spec.capacity);
        }
        case Family::ExplicitTable: {
            const auto& ni = core->owned[static_cast<std::size_t>(owner)];
            if (ni.size() > 20) throw ValidationError("explicit table ground set too large");
            std::vector<Rat> by_mask(1u << ni.size(), Rat(0));
            std::vector<bool> present(1u << ni.size(), false);
            for (const auto& [ids, value] : spec.table) {
                std::uint32_t mask = 0;
                for (const auto& id : ids) {
                    auto cit = core->config_by_id.find(id);
                    if (cit == core->config_by_id.end())
                        throw ValidationError("unknown configuration in table: " + id);
                    auto it = std::find(ni.begin(), ni.end(), cit->second);
                    if (it == ni.end())
                        throw ValidationError("table subset mentions configuration " + id +
                                              " outside N_i");
                    mask |= 1u << (it - ni.begin());
                }
                if (present[mask]) throw ValidationError("duplicate table subset");
                present[mask] = true;
                if (value < 0) throw ValidationError("negative table value");
                by_mask[mask] = value;
            }
            for (std::size_t m = 0; m < present.size(); ++m)
                if (!present[m]) throw ValidationError("table missing a subset of N_i");
            if (by_mask[0] != 0) throw ValidationError("table must have f(empty) = 0");
            for (std::uint32_t m = 1; m < by_mask.size(); ++m)
                for (std::size_t j = 0; j < ni.size(); ++j)
                    if ((m & (1u << j)) && by_mask[m] < by_mask[m & ~(1u << j)])
                        throw ValidationError("table violates monotonicity");
            return std::make_shared<ExplicitTableOracle>(owner, core, std::move(by_mask));
        }
        case Family::Reusable: {
            if (!core->has_arrival_times())
                throw ValidationError("reusable objective requires arrival times");
            if (spec.duration <= 0) throw ValidationError("usage duration must be positive");
            return std::make_shared<ReusableOracle>(owner, core, spec.duration);
        }
        case Family::Sum: {
            std::vector<std::pair<Rat, std::shared_ptr<const ValueOracle>>> parts;
            Domain domain = Domain::Full;
            for (const auto& [weight, part_spec] : spec.parts) {
                if (weight < 0) throw ValidationError("negative sum weight");
                if (!part_spec) throw ValidationError("null sum part");
                auto part = build_oracle(core, owner, *part_spec);
                if (part->domain() == Domain::SubfeasibleOnly) domain = Domain::SubfeasibleOnly;
                parts.emplace_back(weight, std::move(part));
            }
            return std::make_shared<SumOracle>(owner, std::move(parts), domain);
        }
    }
    throw ValidationError("unknown objective family");
}

namespace {
std::shared_ptr<ObjectiveSpec> make_spec(ObjectiveSpec::Family family) {
    auto s = std::make_shared<ObjectiveSpec>();
    s->family = family;
    return s;
}
}  // namespace

std::shared_ptr<const ObjectiveSpec> zero_spec() { return make_spec(ObjectiveSpec::Family::Zero); }

std::shared_ptr<const ObjectiveSpec> coverage_spec() {
    return make_spec(ObjectiveSpec::Family::Coverage);
}

std::shared_ptr<const ObjectiveSpec> budget_additive_spec(Rat budget,
                                                          std::map<std::string, Rat> bids) {
    auto s = make_spec(ObjectiveSpec::Family::BudgetAdditive);
    s->budget = std::move(budget);
    s->weights = std::move(bids);
    return s;
}

std::shared_ptr<const ObjectiveSpec> weighted_config_spec(std::map<std::string, Rat> weights,
                                                          bool free_disposal, int capacity) {
    auto s = make_spec(ObjectiveSpec::Family::WeightedConfig);
    s->weights = std::move(weights);
    s->free_disposal = free_disposal;
    s->capacity = capacity;
    return s;
}

std::shared_ptr<const ObjectiveSpec> explicit_table_spec(
    std::vector<std::pair<std::vector<std::string>, Rat>> table) {
    auto s = make_spec(ObjectiveSpec::Family::ExplicitTable);
    s->table = std::move(table);
    return s;
}

std::shared_ptr<const ObjectiveSpec> reusable_spec(Rat duration) {
    auto s = make_spec(ObjectiveSpec::Family::Reusable);
    s->duration = std::move(duration);
    return s;
}

std::shared_ptr<const ObjectiveSpec> sum_spec(
    std::vector<std::pair<Rat, std::shared_ptr<const ObjectiveSpec>>> parts) {
    auto s = make_spec(ObjectiveSpec::Family::Sum);
    s->parts = std::move(parts);
    return s;
}

}  // namespace osw
