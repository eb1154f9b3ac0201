#include "osw/reveal.hpp"

#include <algorithm>
#include <set>

#include "osw/properties.hpp"

namespace osw {

namespace {

// g_i over the hat instance's ground set N ∪ N̂. The revealed part is spread
// over β_i; the real part keeps the base activation via γ.
class RevealOracle final : public ValueOracle {
public:
    RevealOracle(int owner, CorePtr hat_core, const Instance& base,
                 std::vector<ConcaveClosureSolution::BetaEntry> beta,
                 std::vector<int> base_index)
        : ValueOracle(owner, base.objective(owner).domain()),
          hat_core_(std::move(hat_core)),
          base_core_(base.core()),
          base_oracle_(base.objectives()[static_cast<std::size_t>(owner)]),
          beta_(std::move(beta)),
          base_index_(std::move(base_index)) {}

    std::string family() const override { return "reveal:" + base_oracle_->family(); }

    Rat evaluate(const ElementSet& S) const override {
        std::vector<int> real;              // base indices in S ∩ N_i
        std::vector<int> revealed_arrivals; // arrivals t with ĥe_t ∈ S
        for (int e : S.elems()) {
            int b = base_index_.at(static_cast<std::size_t>(e));
            if (b < 0)
                revealed_arrivals.push_back(
                    hat_core_->configs[static_cast<std::size_t>(e)].arrival);
            else if (base_core_->configs[static_cast<std::size_t>(b)].engages(owner()))
                real.push_back(b);
        }
        std::vector<int> key = real;
        key.push_back(-1);
        key.insert(key.end(), revealed_arrivals.begin(), revealed_arrivals.end());
        auto hit = cache_.find(key);
        if (hit != cache_.end()) return hit->second;
        if (real.size() > 20) throw ValidationError("reveal enumeration cap exceeded");

        // Only elements with 0 < p < 1 branch; p = 1 is forced in, p = 0 out.
        std::vector<int> sure, free;
        std::vector<Rat> p;
        for (int b : real) {
            Rat pb = base_core_->p(owner(), b);
            if (pb == 1) {
                sure.push_back(b);
            } else if (pb != 0) {
                free.push_back(b);
                p.push_back(std::move(pb));
            }
        }

        Rat total(0);
        for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
            Rat weight(1);
            std::vector<int> subset = sure;
            for (std::size_t j = 0; j < free.size(); ++j) {
                if (mask & (1u << j)) {
                    weight *= p[j];
                    subset.push_back(free[j]);
                } else {
                    weight *= Rat(1) - p[j];
                }
            }
            total += weight * extended(revealed_arrivals, ElementSet(std::move(subset)));
        }
        cache_.emplace(std::move(key), total);
        return total;
    }

private:
    // f̂_i(X ∪ Ŝ) = Σ_W β_i(W) f_i(X ∪ (∪_{t revealed} N_t ∩ W)).
    Rat extended(const std::vector<int>& revealed_arrivals, const ElementSet& X) const {
        Rat total(0);
        for (const auto& entry : beta_) {
            ElementSet arg = X;
            for (int w : entry.X.elems())
                if (std::find(revealed_arrivals.begin(), revealed_arrivals.end(),
                              base_core_->configs[static_cast<std::size_t>(w)].arrival) !=
                    revealed_arrivals.end())
                    arg.insert(w);
            total += entry.mass * base_oracle_->evaluate(arg);
        }
        return total;
    }

    CorePtr hat_core_;
    CorePtr base_core_;
    std::shared_ptr<const ValueOracle> base_oracle_;
    std::vector<ConcaveClosureSolution::BetaEntry> beta_;
    std::vector<int> base_index_;
    mutable std::map<std::vector<int>, Rat> cache_;
};

std::string unique_name(std::string candidate, const std::set<std::string>& taken) {
    while (taken.count(candidate)) candidate += "'";
    return candidate;
}

}  // namespace

RevealedInstance build_reveal(const Instance& base, const ConcaveClosureSolution& sol) {
    if (sol.O.size() != base.resources().size() || sol.beta.size() != base.resources().size() ||
        sol.yc.size() != base.configs().size())
        throw ValidationError("concave-closure solution does not match the instance");

    InstanceData data = base.data();
    data.name += "-reveal";
    data.activation.clear();  // Ĝ is deterministic

    std::set<std::string> resource_names, config_ids;
    for (const auto& r : data.resources) resource_names.insert(r.name);
    for (const auto& c : data.configurations) config_ids.insert(c.id);

    std::vector<std::string> reveal_ids(static_cast<std::size_t>(base.num_arrivals()));
    for (int t = 0; t < base.num_arrivals(); ++t) {
        std::set<int> engaged;
        for (std::size_t i = 0; i < sol.O.size(); ++i)
            for (int e : sol.O[i].elems())
                if (base.config(e).arrival == t) engaged.insert(static_cast<int>(i));

        bool collides = false;
        for (int e : base.menu(t)) {
            const auto& rs = base.config(e).resources;
            if (std::set<int>(rs.begin(), rs.end()) == engaged) collides = true;
        }

        std::vector<std::string> names;
        for (int i : engaged) names.push_back(base.resources()[static_cast<std::size_t>(i)].name);
        if (engaged.empty() || collides) {
            std::string dname = unique_name("~d" + std::to_string(t + 1), resource_names);
            resource_names.insert(dname);
            data.resources.push_back({dname, true});
            names.push_back(dname);
        }

        std::string id = unique_name("~h" + std::to_string(t + 1), config_ids);
        config_ids.insert(id);
        reveal_ids[static_cast<std::size_t>(t)] = id;
        data.configurations.push_back({id, t + 1, std::move(names), true});
    }

    RevealedInstance rev;
    rev.base = base;
    rev.sol = sol;
    rev.hat = Instance::build_with_oracles(data, [&](const CorePtr& core) {
        std::vector<int> base_index(core->configs.size(), -1);
        for (std::size_t e = 0; e < core->configs.size(); ++e)
            if (!core->configs[e].revealed)
                base_index[e] = base.config_index(core->configs[e].id);

        std::vector<std::shared_ptr<const ValueOracle>> oracles(core->resources.size());
        for (std::size_t i = 0; i < core->resources.size(); ++i) {
            if (core->resources[i].dummy)
                oracles[i] = build_oracle(core, static_cast<int>(i), ObjectiveSpec{});
            else
                oracles[i] = std::make_shared<RevealOracle>(static_cast<int>(i), core, base,
                                                            sol.beta[i], base_index);
        }
        return oracles;
    });

    rev.base_index.assign(rev.hat.configs().size(), -1);
    rev.hat_index.assign(base.configs().size(), -1);
    for (std::size_t e = 0; e < rev.hat.configs().size(); ++e)
        if (!rev.hat.config(static_cast<int>(e)).revealed) {
            int b = base.config_index(rev.hat.config(static_cast<int>(e)).id);
            rev.base_index[e] = b;
            rev.hat_index[static_cast<std::size_t>(b)] = static_cast<int>(e);
        }
    for (int t = 0; t < base.num_arrivals(); ++t)
        rev.reveal_config.push_back(rev.hat.config_index(reveal_ids[static_cast<std::size_t>(t)]));
    return rev;
}

Rat g_value(const RevealedInstance& rev, int resource, const ElementSet& S) {
    return rev.hat.objective(resource).evaluate(S);
}

RevealReport verify_reveal(const RevealedInstance& rev, long long cap) {
    RevealReport report;
    auto fail = [&](const std::string& what) {
        if (report.note.empty()) report.note = what;
    };

    GreedyResult base_run = run_greedy(rev.base);
    GreedyResult hat_run = run_greedy(rev.hat);

    report.greedy_value_equal = base_run.total == hat_run.total;
    if (!report.greedy_value_equal) fail("greedy totals differ");

    report.greedy_real_only = true;
    report.per_step_dominance = true;
    for (const auto& step : hat_run.trace.steps) {
        if (!step.chosen) continue;
        if (rev.base_index[static_cast<std::size_t>(*step.chosen)] < 0) {
            report.greedy_real_only = false;
            fail("greedy selected a revealed configuration at arrival " +
                 std::to_string(step.arrival + 1));
        }
        int he = rev.reveal_config[static_cast<std::size_t>(step.arrival)];
        for (const auto& [e, m] : step.candidates)
            if (e == he && m > step.chosen_marginal) {
                report.per_step_dominance = false;
                fail("revealed configuration dominates at arrival " +
                     std::to_string(step.arrival + 1));
            }
    }

    OptResult hat_opt = opt_bruteforce(rev.hat, cap);
    report.opt_dominates = hat_opt.value >= rev.sol.value;
    if (!report.opt_dominates) fail("OPT of the companion falls below the relaxation value");

    // Σ_i g_i(N̂) recovers the relaxation value; g agrees with F on the base
    // ground set.
    ElementSet nhat(std::vector<int>(rev.reveal_config));
    Rat reveal_total(0);
    for (std::size_t i = 0; i < rev.hat.resources().size(); ++i)
        reveal_total += g_value(rev, static_cast<int>(i), nhat);
    report.value_identities = reveal_total == rev.sol.value;
    if (!report.value_identities) fail("g(N̂) does not match the relaxation value");

    const std::size_t n_base = rev.base.configs().size();
    if (n_base <= 10) {
        for (std::uint32_t mask = 0; mask < (1u << n_base) && report.value_identities; ++mask) {
            std::vector<int> zb, zh;
            for (std::size_t e = 0; e < n_base; ++e)
                if (mask & (1u << e)) {
                    zb.push_back(static_cast<int>(e));
                    zh.push_back(rev.hat_index[e]);
                }
            ElementSet Z(std::move(zb));
            if (!rev.base.core()->is_subfeasible(Z)) continue;
            ElementSet Zh(std::move(zh));
            for (std::size_t i = 0; i < rev.base.resources().size(); ++i)
                if (g_value(rev, static_cast<int>(i), Zh) !=
                    expected_value(static_cast<int>(i), Z, rev.base)) {
                    report.value_identities = false;
                    fail("g and F disagree on a base-ground set");
                }
        }
    }

    report.monotone_so_ok = true;
    bool all_submodular = true;
    for (std::size_t i = 0; i < rev.base.resources().size(); ++i) {
        if (rev.base.resources()[i].dummy) continue;
        const ValueOracle& f = rev.base.objective(static_cast<int>(i));
        ElementSet ground_base{std::vector<int>(rev.base.owned(static_cast<int>(i)))};
        if (f.domain() != ValueOracle::Domain::Full ||
            !check_submodular(f, ground_base, rev.base).holds)
            all_submodular = false;
    }
    for (std::size_t i = 0; i < rev.hat.resources().size(); ++i) {
        if (rev.hat.resources()[i].dummy) continue;
        const ValueOracle& g = rev.hat.objective(static_cast<int>(i));
        const auto& owned = rev.hat.owned(static_cast<int>(i));
        ElementSet ground{std::vector<int>(owned)};
        if (!check_monotone(g, ground, rev.hat).holds) {
            report.monotone_so_ok = false;
            fail("g is not monotone for resource " + rev.hat.resources()[i].name);
        }
        if (!check_so(g, owned, rev.hat).holds) {
            report.monotone_so_ok = false;
            fail("g fails the submodular-order check for resource " + rev.hat.resources()[i].name);
        }
        if (all_submodular && !check_submodular(g, ground, rev.hat).holds) {
            report.submodular_preserved = false;
            fail("g loses submodularity for resource " + rev.hat.resources()[i].name);
        }
    }

    report.holds = report.greedy_value_equal && report.greedy_real_only &&
                   report.per_step_dominance && report.opt_dominates &&
                   report.value_identities && report.monotone_so_ok &&
                   report.submodular_preserved;
    return report;
}

}  // namespace osw
