#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "osw/instance.hpp"
#include "osw/rational.hpp"

namespace osw {

// Monotone set-function oracle owned by one resource. evaluate depends only
// on S ∩ N_i and satisfies f(∅) = 0.
class ValueOracle {
public:
    enum class Domain { Full, SubfeasibleOnly };

    virtual ~ValueOracle() = default;

    int owner() const { return owner_; }
    Domain domain() const { return domain_; }
    virtual std::string family() const = 0;
    virtual Rat evaluate(const ElementSet& S) const = 0;

    // f(e | S) = f(S ∪ e) − f(S). Requires e ∉ S.
    Rat marginal(int e, const ElementSet& S) const;

protected:
    ValueOracle(int owner, Domain domain) : owner_(owner), domain_(domain) {}

private:
    int owner_;
    Domain domain_;
};

struct ObjectiveSpec {
    enum class Family {
        Zero,
        Coverage,
        BudgetAdditive,
        WeightedConfig,
        ExplicitTable,
        Reusable,
        Sum
    };
    Family family = Family::Zero;

    Rat budget;                                              // BudgetAdditive
    std::map<std::string, Rat> weights;                      // bids / config weights
    bool free_disposal = false;                              // WeightedConfig
    int capacity = 1;                                        // WeightedConfig
    std::vector<std::pair<std::vector<std::string>, Rat>> table;  // ExplicitTable
    Rat duration;                                            // Reusable d_i
    std::vector<std::pair<Rat, std::shared_ptr<const ObjectiveSpec>>> parts;  // Sum
};

// Builds the oracle for one resource from its descriptor. Validates
// explicit tables (complete, f(∅)=0, monotone) at build time. Oracles
// co-own the structural core, so they stay valid across Instance copies.
std::shared_ptr<const ValueOracle> build_oracle(const CorePtr& core, int owner,
                                                const ObjectiveSpec& spec);

std::shared_ptr<const ObjectiveSpec> zero_spec();
std::shared_ptr<const ObjectiveSpec> coverage_spec();
std::shared_ptr<const ObjectiveSpec> budget_additive_spec(Rat budget,
                                                          std::map<std::string, Rat> bids);
std::shared_ptr<const ObjectiveSpec> weighted_config_spec(std::map<std::string, Rat> weights,
                                                          bool free_disposal, int capacity);
std::shared_ptr<const ObjectiveSpec> explicit_table_spec(
    std::vector<std::pair<std::vector<std::string>, Rat>> table);
std::shared_ptr<const ObjectiveSpec> reusable_spec(Rat duration);
std::shared_ptr<const ObjectiveSpec> sum_spec(
    std::vector<std::pair<Rat, std::shared_ptr<const ObjectiveSpec>>> parts);

// The matching process for a reusable resource: scan S ∩ N_i in arrival
// order, matching whenever no prior match occupies [a(t'), a(t')+d).
// Returns (count, matched elements). S ∩ N_i must be subfeasible and the
// instance must carry arrival times.
std::pair<int, ElementSet> matching_process(const Instance& inst, int owner,
                                            const ElementSet& S, const Rat& duration);

}  // namespace osw
