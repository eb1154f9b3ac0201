#include "osw/uiid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace osw {

void validate_distribution(const TypeDistribution& dist) {
    if (dist.horizon < 1) throw ValidationError("horizon must be at least 1");
    if (dist.types.empty()) throw ValidationError("type distribution has no types");
    Rat total(0);
    std::set<std::string> ids, resource_names;
    for (const auto& r : dist.resources) resource_names.insert(r.name);
    for (const auto& ty : dist.types) {
        if (ty.weight < 0) throw ValidationError("negative type weight");
        total += ty.weight;
        for (const auto& cfg : ty.menu) {
            if (!ids.insert(cfg.id).second)
                throw ValidationError("duplicate type-config id: " + cfg.id);
            if (cfg.resources.empty())
                throw ValidationError("type-config with empty resource set: " + cfg.id);
            for (const auto& rname : cfg.resources)
                if (!resource_names.count(rname))
                    throw ValidationError("type-config " + cfg.id + " references unknown resource " +
                                          rname);
        }
    }
    if (total != 1) throw ValidationError("type weights do not sum to 1");
    for (const auto& r : dist.resources) {
        if (r.dummy) continue;
        if (!dist.budgets.count(r.name))
            throw ValidationError("missing budget for resource " + r.name);
        if (dist.budgets.at(r.name) < 0) throw ValidationError("negative budget");
    }
    for (const auto& [rname, by_cfg] : dist.bids) {
        if (!resource_names.count(rname)) throw ValidationError("bids for unknown resource " + rname);
        for (const auto& [cid, bid] : by_cfg) {
            if (!ids.count(cid)) throw ValidationError("bid for unknown type-config " + cid);
            if (bid < 0) throw ValidationError("negative bid");
        }
    }
}

std::vector<const TypeConfig*> flatten_menu(const TypeDistribution& dist) {
    std::vector<const TypeConfig*> out;
    for (const auto& ty : dist.types)
        for (const auto& cfg : ty.menu) out.push_back(&cfg);
    return out;
}

Rat BudgetCountOracle::evaluate(const std::vector<int>& counts) const {
    if (counts.size() != bids_.size())
        throw ValidationError("count vector does not match the type-config space");
    Rat total(0);
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] < 0) throw ValidationError("negative count");
        total += Rat(counts[j]) * bids_[j];
    }
    return std::min(budget_, total);
}

std::vector<BudgetCountOracle> multiset_oracles(const TypeDistribution& dist) {
    validate_distribution(dist);
    auto flat = flatten_menu(dist);
    std::vector<BudgetCountOracle> out;
    for (const auto& r : dist.resources) {
        if (r.dummy) continue;
        std::vector<Rat> bids(flat.size(), Rat(0));
        auto by_cfg = dist.bids.find(r.name);
        for (std::size_t j = 0; j < flat.size(); ++j) {
            if (std::find(flat[j]->resources.begin(), flat[j]->resources.end(), r.name) ==
                flat[j]->resources.end())
                continue;
            if (by_cfg != dist.bids.end()) {
                auto it = by_cfg->second.find(flat[j]->id);
                if (it != by_cfg->second.end()) bids[j] = it->second;
            }
        }
        out.emplace_back(dist.budgets.at(r.name), std::move(bids));
    }
    return out;
}

PropertyReport dr_report(const TypeDistribution& dist) {
    auto oracles = multiset_oracles(dist);
    std::vector<int> cap(flatten_menu(dist).size(), dist.horizon);
    PropertyReport merged;
    merged.property = "diminishing-returns";
    for (const auto& oracle : oracles) {
        PropertyReport r = check_dr(oracle, cap);
        merged.checked += r.checked;
        merged.exhaustive = merged.exhaustive && r.exhaustive;
        if (!r.holds && merged.holds) {
            merged.holds = false;
            merged.witness = r.witness;
        }
    }
    return merged;
}

namespace {

Rat to_unit_rational(std::uint64_t u) {
    Rat point = Rat(mpz_class(std::to_string(u)), mpz_class(1));
    mpz_class two64(1);
    two64 <<= 64;
    return point / Rat(two64);
}

}  // namespace

std::vector<int> sample_path(const TypeDistribution& dist, Rng& rng) {
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(dist.horizon));
    for (int v = 0; v < dist.horizon; ++v) {
        Rat point = to_unit_rational(rng());
        Rat cum(0);
        int pick = static_cast<int>(dist.types.size()) - 1;
        for (std::size_t k = 0; k < dist.types.size(); ++k) {
            cum += dist.types[k].weight;
            if (point < cum) {
                pick = static_cast<int>(k);
                break;
            }
        }
        path.push_back(pick);
    }
    return path;
}

Instance realize_path(const TypeDistribution& dist, const std::vector<int>& path) {
    validate_distribution(dist);
    InstanceData data;
    data.name = dist.name + "-path";
    data.resources = dist.resources;
    data.num_arrivals = static_cast<int>(path.size());
    data.arrival_model = ArrivalModel::Uiid;

    std::map<std::string, std::map<std::string, Rat>> realized_bids;  // resource -> config id
    for (std::size_t v = 0; v < path.size(); ++v) {
        int k = path[v];
        if (k < 0 || k >= static_cast<int>(dist.types.size()))
            throw ValidationError("path references an unknown type");
        for (const auto& cfg : dist.types[static_cast<std::size_t>(k)].menu) {
            std::string id = cfg.id + "@" + std::to_string(v + 1);
            data.configurations.push_back({id, static_cast<int>(v) + 1, cfg.resources, false});
            data.activation.emplace(id, cfg.activation);
            auto by_res = dist.bids.end();
            for (const auto& rname : cfg.resources) {
                by_res = dist.bids.find(rname);
                if (by_res == dist.bids.end()) continue;
                auto it = by_res->second.find(cfg.id);
                if (it != by_res->second.end() && it->second != 0)
                    realized_bids[rname][id] = it->second;
            }
        }
    }
    for (const auto& r : dist.resources) {
        if (r.dummy) continue;
        data.objectives.emplace_back(
            r.name, budget_additive_spec(dist.budgets.at(r.name), realized_bids[r.name]));
    }
    return Instance::build(data);
}

Rat run_uiid_greedy(const TypeDistribution& dist, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> path = sample_path(dist, rng);
    return run_greedy(realize_path(dist, path)).total;
}

RatioEstimate estimate_ratio(const TypeDistribution& dist, long long trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trial count must be positive");
    validate_distribution(dist);

    Rng rng(seed);
    std::map<std::vector<int>, std::pair<Rat, Rat>> cache;
    RatioEstimate est;
    est.trials = trials;
    Rat sum_alg(0), sum_optc(0);
    for (long long trial = 0; trial < trials; ++trial) {
        std::vector<int> path = sample_path(dist, rng);
        auto it = cache.find(path);
        if (it == cache.end()) {
            Instance inst = realize_path(dist, path);
            Rat alg = run_greedy(inst).total;
            Rat optc = solve_optc(inst).value;
            it = cache.emplace(std::move(path), std::make_pair(std::move(alg), std::move(optc)))
                     .first;
        }
        const auto& [alg, optc] = it->second;
        if (Rat(2) * alg < optc) est.per_path_half = false;
        sum_alg += alg;
        sum_optc += optc;
        est.per_trial.emplace_back(alg, optc);
    }
    est.distinct_paths = static_cast<long long>(cache.size());
    est.mean_alg = sum_alg / Rat(static_cast<long>(trials));
    est.mean_optc = sum_optc / Rat(static_cast<long>(trials));
    if (est.mean_optc == 0) {
        est.ratio = est.lower99 = 1.0;
        return est;
    }
    est.ratio = rat_double(est.mean_alg / est.mean_optc);

    // Delta-method variance of the ratio of means over paired samples.
    const double n = static_cast<double>(trials);
    const double abar = rat_double(est.mean_alg), cbar = rat_double(est.mean_optc);
    double saa = 0, scc = 0, sac = 0;
    for (const auto& [a, c] : est.per_trial) {
        const double da = rat_double(a) - abar, dc = rat_double(c) - cbar;
        saa += da * da;
        scc += dc * dc;
        sac += da * dc;
    }
    if (trials > 1) {
        const double denom = n - 1;
        const double r = est.ratio;
        double var =
            (saa / denom - 2 * r * (sac / denom) + r * r * (scc / denom)) / (n * cbar * cbar);
        est.std_error = var > 0 ? std::sqrt(var) : 0.0;
    }
    est.lower99 = est.ratio - 2.3263478740408408 * est.std_error;
    return est;
}

namespace {

ActivationSpec independent(std::map<std::string, Rat> marginals) {
    ActivationSpec a;
    a.kind = ActivationSpec::Kind::Independent;
    a.marginals = std::move(marginals);
    return a;
}

}  // namespace

TypeDistribution uiid_matching() {
    TypeDistribution d;
    d.name = "uiid-matching";
    d.resources = {{"a", false}, {"b", false}};
    d.types = {{"ta", {{"ca", {"a"}, {}}}, rat(1, 2)}, {"tb", {{"cb", {"b"}, {}}}, rat(1, 2)}};
    d.horizon = 4;
    d.budgets = {{"a", Rat(1)}, {"b", Rat(1)}};
    d.bids = {{"a", {{"ca", Rat(1)}}}, {"b", {{"cb", Rat(1)}}}};
    return d;
}

TypeDistribution uiid_stochastic() {
    TypeDistribution d;
    d.name = "uiid-stochastic";
    d.resources = {{"r", false}, {"s", false}};
    d.types = {{"risky", {{"cr", {"r"}, independent({{"r", rat(1, 2)}})}}, rat(1, 2)},
               {"safe", {{"cs", {"s"}, {}}, {"cm", {"r"}, independent({{"r", rat(1, 4)}})}},
                rat(1, 2)}};
    d.horizon = 3;
    d.budgets = {{"r", Rat(1)}, {"s", Rat(1)}};
    d.bids = {{"r", {{"cr", Rat(1)}, {"cm", Rat(1)}}}, {"s", {{"cs", rat(1, 2)}}}};
    return d;
}

TypeDistribution uiid_budgets() {
    TypeDistribution d;
    d.name = "uiid-budgets";
    d.resources = {{"x", false}, {"y", false}};
    d.types = {{"t1", {{"c1", {"x", "y"}, independent({{"y", rat(1, 2)}})}}, rat(1, 2)},
               {"t2", {{"c2", {"x"}, independent({{"x", rat(1, 2)}})}}, rat(1, 4)},
               {"t3", {{"c3", {"y"}, {}}, {"c4", {"x"}, {}}}, rat(1, 4)}};
    d.horizon = 3;
    d.budgets = {{"x", rat(3, 2)}, {"y", Rat(1)}};
    d.bids = {{"x", {{"c1", Rat(1)}, {"c2", Rat(1)}, {"c4", rat(1, 2)}}},
              {"y", {{"c1", rat(1, 2)}, {"c3", rat(1, 2)}}}};
    return d;
}

}  // namespace osw
