#include "osw/benchmarks.hpp"

#include <algorithm>

namespace osw {

namespace {

Rat allocation_value(const Instance& inst, const ElementSet& chosen) {
    Rat total(0);
    for (std::size_t i = 0; i < inst.resources().size(); ++i)
        total += expected_value(static_cast<int>(i), chosen, inst);
    return total;
}

}  // namespace

OptResult opt_bruteforce(const Instance& inst, long long cap) {
    const int T = inst.num_arrivals();
    long long space = 1;
    for (int t = 0; t < T; ++t) {
        space *= static_cast<long long>(inst.menu(t).size()) + 1;
        if (space > cap) throw ValidationError("opt_bruteforce enumeration cap exceeded");
    }

    // Odometer over options per arrival: menu configurations in index order,
    // then no action; the first strict maximizer found is kept, which makes
    // the result the lexicographically-least optimal allocation.
    std::vector<int> option(static_cast<std::size_t>(T), 0);
    OptResult best;
    bool have_best = false;
    for (;;) {
        Allocation alloc;
        for (int t = 0; t < T; ++t) {
            const auto& menu = inst.menu(t);
            int o = option[static_cast<std::size_t>(t)];
            if (o < static_cast<int>(menu.size())) alloc.choice[t] = menu[static_cast<std::size_t>(o)];
        }
        Rat value = allocation_value(inst, alloc.elements());
        if (!have_best || value > best.value) {
            best = {std::move(alloc), std::move(value)};
            have_best = true;
        }

        int t = T - 1;
        while (t >= 0) {
            auto& o = option[static_cast<std::size_t>(t)];
            if (++o <= static_cast<int>(inst.menu(t).size())) break;
            o = 0;
            --t;
        }
        if (t < 0) break;
    }
    if (!have_best) best.value = allocation_value(inst, {});  // T = 0
    return best;
}

namespace {

std::unique_ptr<PolicyNode> expectimax_node(const Instance& inst, int t,
                                            std::vector<ElementSet>& active) {
    auto node = std::make_unique<PolicyNode>();
    node->arrival = t;
    if (t == inst.num_arrivals()) {
        for (std::size_t i = 0; i < active.size(); ++i)
            node->value += inst.objective(static_cast<int>(i)).evaluate(active[i]);
        return node;
    }

    // No action first, then menu configurations; keep strict improvements.
    node->value = expectimax_node(inst, t + 1, active)->value;
    for (int e : inst.menu(t)) {
        const auto& cfg = inst.config(e);
        const auto& table = inst.activation().per_config[static_cast<std::size_t>(e)];
        Rat value(0);
        std::vector<std::pair<std::uint32_t, std::unique_ptr<PolicyNode>>> children;
        for (const auto& [mask, prob] : table.outcomes) {
            for (std::size_t k = 0; k < cfg.resources.size(); ++k)
                if (mask & (1u << k)) active[static_cast<std::size_t>(cfg.resources[k])].insert(e);
            auto child = expectimax_node(inst, t + 1, active);
            for (std::size_t k = 0; k < cfg.resources.size(); ++k)
                if (mask & (1u << k)) active[static_cast<std::size_t>(cfg.resources[k])].erase(e);
            value += prob * child->value;
            children.emplace_back(mask, std::move(child));
        }
        if (value > node->value) {
            node->choice = e;
            node->value = std::move(value);
            node->children = std::move(children);
        }
    }
    if (!node->choice) {
        auto child = expectimax_node(inst, t + 1, active);
        node->value = child->value;
        node->children.emplace_back(0u, std::move(child));
    }
    return node;
}

}  // namespace

AoptResult aopt_expectimax(const Instance& inst, long long cap) {
    long long space = 1;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        long long branch = 1;
        for (int e : inst.menu(t))
            branch += static_cast<long long>(
                inst.activation().per_config[static_cast<std::size_t>(e)].outcomes.size());
        space *= branch;
        if (space > cap) throw ValidationError("aopt_expectimax state cap exceeded");
    }
    std::vector<ElementSet> active(inst.resources().size());
    AoptResult result;
    result.policy = expectimax_node(inst, 0, active);
    result.value = result.policy->value;
    return result;
}

Rat simulate_policy(const Instance& inst, const PolicyNode& root, Rng& rng) {
    std::vector<ElementSet> active(inst.resources().size());
    const PolicyNode* node = &root;
    while (node->arrival < inst.num_arrivals()) {
        if (!node->choice) {
            node = node->children.front().second.get();
            continue;
        }
        int e = *node->choice;
        ActivationOutcome outcome = sample_outcome(e, inst, rng);
        const auto& cfg = inst.config(e);
        for (std::size_t k = 0; k < cfg.resources.size(); ++k)
            if (outcome.active_mask & (1u << k))
                active[static_cast<std::size_t>(cfg.resources[k])].insert(e);
        const PolicyNode* next = nullptr;
        for (const auto& [mask, child] : node->children)
            if (mask == outcome.active_mask) next = child.get();
        if (!next) throw ValidationError("policy tree missing a realized outcome branch");
        node = next;
    }
    Rat total(0);
    for (std::size_t i = 0; i < active.size(); ++i)
        total += inst.objective(static_cast<int>(i)).evaluate(active[i]);
    return total;
}

namespace {

struct OptcLayout {
    LinearProgram lp;
    std::vector<int> y_var;  // per configuration
    struct Column {
        int resource;
        ElementSet X;
        int var;
    };
    std::vector<Column> columns;
};

OptcLayout build_optc_layout(const Instance& inst, long long cap) {
    OptcLayout out;
    const int n_res = static_cast<int>(inst.resources().size());
    long long total_cols = 0;
    for (int i = 0; i < n_res; ++i) {
        if (inst.owned(i).size() >= 62) throw ValidationError("optc column cap exceeded");
        total_cols += 1LL << inst.owned(i).size();
        if (total_cols > cap) throw ValidationError("optc column cap exceeded");
    }

    for (std::size_t e = 0; e < inst.configs().size(); ++e)
        out.y_var.push_back(out.lp.add_variable("y_" + inst.config(static_cast<int>(e)).id));

    for (int t = 0; t < inst.num_arrivals(); ++t) {
        LinearConstraint con;
        con.name = "arrival_" + std::to_string(t + 1);
        con.sense = 'L';
        con.rhs = 1;
        for (int e : inst.menu(t))
            con.coeffs.emplace_back(out.y_var[static_cast<std::size_t>(e)], Rat(1));
        out.lp.add_constraint(std::move(con));
    }

    for (int i = 0; i < n_res; ++i) {
        const auto& owned = inst.owned(i);
        const auto& oracle = inst.objective(i);
        LinearConstraint dist;
        dist.name = "dist_" + inst.resources()[static_cast<std::size_t>(i)].name;
        dist.sense = 'E';
        dist.rhs = 1;
        std::vector<std::vector<int>> per_elem(owned.size());  // columns containing owned[j]
        for (std::uint64_t mask = 0; mask < (1ull << owned.size()); ++mask) {
            std::vector<int> subset;
            for (std::size_t j = 0; j < owned.size(); ++j)
                if (mask & (1ull << j)) subset.push_back(owned[j]);
            ElementSet X(std::move(subset));
            if (!inst.core()->is_subfeasible(X)) continue;
            int var = out.lp.add_variable(
                "a_" + inst.resources()[static_cast<std::size_t>(i)].name + "_" +
                    std::to_string(mask),
                oracle.evaluate(X));
            dist.coeffs.emplace_back(var, Rat(1));
            for (std::size_t j = 0; j < owned.size(); ++j)
                if (mask & (1ull << j)) per_elem[j].push_back(var);
            out.columns.push_back({i, std::move(X), var});
        }
        out.lp.add_constraint(std::move(dist));
        for (std::size_t j = 0; j < owned.size(); ++j) {
            LinearConstraint capcon;
            capcon.name = "cap_" + inst.resources()[static_cast<std::size_t>(i)].name + "_" +
                          inst.config(owned[j]).id;
            capcon.sense = 'L';
            capcon.rhs = 0;
            for (int var : per_elem[j]) capcon.coeffs.emplace_back(var, Rat(1));
            capcon.coeffs.emplace_back(out.y_var[static_cast<std::size_t>(owned[j])],
                                       -inst.p(i, owned[j]));
            out.lp.add_constraint(std::move(capcon));
        }
    }
    return out;
}

}  // namespace

LinearProgram build_optc_lp(const Instance& inst, long long cap) {
    return build_optc_layout(inst, cap).lp;
}

ConcaveClosureSolution solve_optc(const Instance& inst, long long cap) {
    OptcLayout layout = build_optc_layout(inst, cap);
    LpSolution sol = simplex_solve(layout.lp);
    if (sol.status != LpStatus::Optimal)
        throw ValidationError("optc LP did not solve to optimality");

    ConcaveClosureSolution out;
    out.value = sol.value;
    for (int var : layout.y_var) out.yc.push_back(sol.x[static_cast<std::size_t>(var)]);
    out.O.resize(inst.resources().size());
    out.beta.resize(inst.resources().size());
    for (std::size_t i = 0; i < inst.resources().size(); ++i)
        for (int e : inst.owned(static_cast<int>(i)))
            if (out.yc[static_cast<std::size_t>(e)] > 0) out.O[i].insert(e);
    for (auto& col : layout.columns) {
        Rat mass = sol.x[static_cast<std::size_t>(col.var)];
        if (mass > 0)
            out.beta[static_cast<std::size_t>(col.resource)].push_back(
                {std::move(col.X), std::move(mass)});
    }
    return out;
}

DualCertificate build_certificate(const Instance& inst, const GreedyTrace& trace,
                                  const Allocation& opt_alloc) {
    if (static_cast<int>(trace.steps.size()) != inst.num_arrivals())
        throw ValidationError("trace does not match instance");
    const std::size_t n_res = inst.resources().size();
    DualCertificate cert;
    cert.lambda.assign(n_res, std::vector<Rat>(trace.steps.size(), Rat(0)));
    cert.theta.assign(n_res, Rat(0));
    for (const auto& step : trace.steps) {
        auto it = opt_alloc.choice.find(step.arrival);
        if (it != opt_alloc.choice.end()) {
            int opt_e = it->second;
            for (int i : inst.config(opt_e).resources)
                cert.lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(step.arrival)] =
                    expected_marginal(i, opt_e, step.prefix, inst);
        }
        for (const auto& [i, gain] : step.gains) cert.theta[static_cast<std::size_t>(i)] += gain;
    }
    return cert;
}

CertificateReport verify_certificate(const Instance& inst, const DualCertificate& cert,
                                     const Rat& greedy_total, const Allocation& opt_alloc) {
    CertificateReport report;
    Rat dual_total(0);
    for (const auto& row : cert.lambda)
        for (const auto& l : row) {
            if (l < 0) return report;
            dual_total += l;
        }
    for (const auto& th : cert.theta) {
        if (th < 0) return report;
        dual_total += th;
    }
    report.budget_slack = cert.zeta * greedy_total - dual_total;

    ElementSet opt_set = opt_alloc.elements();
    bool holds = report.budget_slack >= 0;
    for (std::size_t i = 0; i < inst.resources().size(); ++i) {
        Rat covered = cert.theta[i];
        for (const auto& l : cert.lambda[i]) covered += l;
        covered -= expected_value(static_cast<int>(i), opt_set, inst);
        if (covered < 0) holds = false;
        report.coverage_slack.push_back(std::move(covered));
    }
    report.holds = holds;
    return report;
}

}  // namespace osw
