#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "osw/benchmarks.hpp"
#include "osw/properties.hpp"

namespace osw {

// One menu entry offered by an arrival type.
struct TypeConfig {
    std::string id;  // unique across all types
    std::vector<std::string> resources;
    ActivationSpec activation;
};

struct ArrivalType {
    std::string name;
    std::vector<TypeConfig> menu;
    Rat weight{0};
};

// Unknown-IID arrival model: V arrivals drawn independently from the type
// distribution; objectives are budget-additive on per-type-config counts
// (diminishing returns on the count lattice).
struct TypeDistribution {
    std::string name;
    std::vector<Resource> resources;
    std::vector<ArrivalType> types;
    int horizon = 1;  // V
    std::map<std::string, Rat> budgets;                      // resource -> budget
    std::map<std::string, std::map<std::string, Rat>> bids;  // resource -> type-config -> bid
};

void validate_distribution(const TypeDistribution& dist);

// All type configs in declaration order; the count-lattice coordinate space.
std::vector<const TypeConfig*> flatten_menu(const TypeDistribution& dist);

// Budget-additive multiset objective of one resource: min(B, Σ_j b_j x_j).
class BudgetCountOracle final : public MultisetOracle {
public:
    BudgetCountOracle(Rat budget, std::vector<Rat> bids)
        : budget_(std::move(budget)), bids_(std::move(bids)) {}
    std::string family() const override { return "budget-additive-counts"; }
    Rat evaluate(const std::vector<int>& counts) const override;

private:
    Rat budget_;
    std::vector<Rat> bids_;
};

// One oracle per non-dummy resource, in resource order.
std::vector<BudgetCountOracle> multiset_oracles(const TypeDistribution& dist);

// DR check of every multiset objective up to `horizon` copies per coordinate.
PropertyReport dr_report(const TypeDistribution& dist);

// Reproducible type sequence of length V (exact inverse-CDF draws).
std::vector<int> sample_path(const TypeDistribution& dist, Rng& rng);

// The realized sequence as an ordinary adversarial-order instance; config ids
// are "<type-config>@<arrival>".
Instance realize_path(const TypeDistribution& dist, const std::vector<int>& path);

// Non-adaptive Greedy on one sampled path.
Rat run_uiid_greedy(const TypeDistribution& dist, std::uint64_t seed);

struct RatioEstimate {
    Rat mean_alg{0};
    Rat mean_optc{0};
    double ratio = 0;
    double std_error = 0;
    double lower99 = 0;  // one-sided 99% lower confidence bound on E[ALG]/E[OPT^c]
    bool per_path_half = true;  // 2·ALG ≥ OPT^c held exactly on every path
    long long trials = 0;
    long long distinct_paths = 0;
    std::vector<std::pair<Rat, Rat>> per_trial;  // (ALG, OPT^c)
};

// Paired estimator: ALG and OPT^c are computed on the same sampled paths;
// the interval uses the delta method for the ratio of means.
RatioEstimate estimate_ratio(const TypeDistribution& dist, long long trials, std::uint64_t seed);

// Shipped fixtures.
TypeDistribution uiid_matching();
TypeDistribution uiid_stochastic();
TypeDistribution uiid_budgets();

}  // namespace osw
