#include "osw/generators.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "osw/properties.hpp"

namespace osw {

ActivationSpec mnl_activation(const std::vector<std::pair<std::string, Rat>>& offered,
                              const Rat& v0) {
    if (v0 < 0) throw ValidationError("negative no-choice weight");
    Rat denom = v0;
    for (const auto& [name, v] : offered) {
        if (v < 0) throw ValidationError("negative choice weight for " + name);
        denom += v;
    }
    if (denom <= 0) throw ValidationError("choice weights sum to zero");
    ActivationSpec spec;
    spec.kind = ActivationSpec::Kind::Joint;
    for (const auto& [name, v] : offered)
        if (v != 0) spec.joint.emplace_back(std::vector<std::string>{name}, v / denom);
    return spec;
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat rand_prob(Rng& rng) {
    int den = uniform_int(rng, 1, 4);
    int num = uniform_int(rng, 1, den);
    return rat(num, den);
}

Rat rand_value(Rng& rng) { return rat(uniform_int(rng, 1, 4), uniform_int(rng, 1, 2)); }

std::vector<std::string> resource_names(int count) {
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) names.push_back("r" + std::to_string(i + 1));
    return names;
}

// Distinct random resources for one arrival's single-resource configurations.
std::vector<int> pick_distinct(Rng& rng, int universe, int count) {
    std::vector<int> all(static_cast<std::size_t>(universe));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(std::min(universe, count)));
    return all;
}

InstanceData matching_skeleton(const GeneratorSpec& spec, Rng& rng, bool stochastic,
                               bool distinct_per_arrival) {
    InstanceData data;
    auto names = resource_names(spec.resources);
    for (const auto& n : names) data.resources.push_back({n, false});
    data.num_arrivals = spec.arrivals;
    for (int t = 0; t < spec.arrivals; ++t) {
        int m = uniform_int(rng, 1, spec.menu_max);
        std::vector<int> targets;
        if (distinct_per_arrival) {
            targets = pick_distinct(rng, spec.resources, m);
        } else {
            for (int j = 0; j < m; ++j) targets.push_back(uniform_int(rng, 0, spec.resources - 1));
        }
        for (std::size_t j = 0; j < targets.size(); ++j) {
            std::string id = "t" + std::to_string(t + 1) + "_" + std::to_string(j + 1);
            const std::string& rname = names[static_cast<std::size_t>(targets[j])];
            data.configurations.push_back({id, t + 1, {rname}, false});
            if (stochastic) {
                ActivationSpec a;
                a.marginals = {{rname, rand_prob(rng)}};
                data.activation.emplace(id, a);
            }
        }
    }
    return data;
}

InstanceData gen_obm(const GeneratorSpec& spec, Rng& rng) {
    InstanceData data = matching_skeleton(spec, rng, false, true);
    for (const auto& r : data.resources) data.objectives.emplace_back(r.name, coverage_spec());
    return data;
}

InstanceData gen_stochastic(const GeneratorSpec& spec, Rng& rng) {
    InstanceData data = matching_skeleton(spec, rng, !spec.allow_p_one_only, false);
    for (const auto& r : data.resources) data.objectives.emplace_back(r.name, coverage_spec());
    return data;
}

InstanceData gen_assortment(const GeneratorSpec& spec, Rng& rng) {
    InstanceData data;
    auto names = resource_names(spec.resources);
    for (const auto& n : names) data.resources.push_back({n, false});
    data.num_arrivals = spec.arrivals;
    std::vector<Rat> weights;
    for (int i = 0; i < spec.resources; ++i) weights.push_back(rand_value(rng));
    Rat v0 = rand_value(rng);
    for (int t = 0; t < spec.arrivals; ++t) {
        int m = uniform_int(rng, 1, spec.menu_max);
        for (int j = 0; j < m; ++j) {
            int size = uniform_int(rng, 1, spec.resources);
            std::vector<int> members = pick_distinct(rng, spec.resources, size);
            std::sort(members.begin(), members.end());
            std::vector<std::string> rnames;
            std::vector<std::pair<std::string, Rat>> offered;
            for (int i : members) {
                rnames.push_back(names[static_cast<std::size_t>(i)]);
                offered.emplace_back(names[static_cast<std::size_t>(i)],
                                     weights[static_cast<std::size_t>(i)]);
            }
            std::string id = "t" + std::to_string(t + 1) + "_" + std::to_string(j + 1);
            data.configurations.push_back({id, t + 1, rnames, false});
            data.activation.emplace(id, mnl_activation(offered, v0));
        }
    }
    for (const auto& r : data.resources) data.objectives.emplace_back(r.name, coverage_spec());
    return data;
}

InstanceData gen_patience(const GeneratorSpec& spec, Rng& rng) {
    if (spec.resources > 3) throw ValidationError("patience family supports at most 3 resources");
    InstanceData data;
    auto names = resource_names(spec.resources);
    for (const auto& n : names) data.resources.push_back({n, false});
    data.num_arrivals = spec.arrivals;

    std::vector<std::vector<int>> perms;
    std::vector<int> base(static_cast<std::size_t>(spec.resources));
    std::iota(base.begin(), base.end(), 0);
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    const int k = std::max(1, std::min(spec.patience, spec.resources));

    // One shared dummy per permutation slot keeps each permutation's
    // configuration a distinct (R, t) pair.
    int used_perms = std::min<int>(static_cast<int>(perms.size()), spec.menu_max);
    for (int s = 0; s < used_perms; ++s)
        data.resources.push_back({"d" + std::to_string(s + 1), true});

    for (int t = 0; t < spec.arrivals; ++t) {
        std::vector<Rat> p;
        for (int i = 0; i < spec.resources; ++i) p.push_back(rand_prob(rng));
        std::shuffle(perms.begin(), perms.end(), rng);
        for (int s = 0; s < used_perms; ++s) {
            const auto& sigma = perms[static_cast<std::size_t>(s)];
            std::vector<std::string> rnames;
            for (int i : sigma) rnames.push_back(names[static_cast<std::size_t>(i)]);
            rnames.push_back("d" + std::to_string(s + 1));
            ActivationSpec a;
            a.kind = ActivationSpec::Kind::Joint;
            Rat survive(1);
            for (int pos = 0; pos < spec.resources && pos < k; ++pos) {
                int i = sigma[static_cast<std::size_t>(pos)];
                Rat hit = survive * p[static_cast<std::size_t>(i)];
                if (hit != 0)
                    a.joint.emplace_back(
                        std::vector<std::string>{names[static_cast<std::size_t>(i)]}, hit);
                survive *= Rat(1) - p[static_cast<std::size_t>(i)];
            }
            std::string id = "t" + std::to_string(t + 1) + "_s" + std::to_string(s + 1);
            data.configurations.push_back({id, t + 1, rnames, false});
            data.activation.emplace(id, a);
        }
    }
    for (int i = 0; i < spec.resources; ++i)
        data.objectives.emplace_back(names[static_cast<std::size_t>(i)], coverage_spec());
    return data;
}

InstanceData gen_reusable(const GeneratorSpec& spec, Rng& rng) {
    // One configuration per (resource, arrival) at most, so every subset of
    // N_i is subfeasible and the matching process is defined everywhere.
    InstanceData data = matching_skeleton(spec, rng, !spec.allow_p_one_only, true);
    for (int t = 0; t < spec.arrivals; ++t) data.arrival_times.push_back(Rat(t + 1));
    for (const auto& r : data.resources)
        data.objectives.emplace_back(r.name, reusable_spec(rat(uniform_int(rng, 1, 5), 2)));
    return data;
}

InstanceData gen_wholepage(const GeneratorSpec& spec, Rng& rng) {
    InstanceData data;
    auto names = resource_names(spec.resources);
    for (const auto& n : names) data.resources.push_back({n, false});
    data.num_arrivals = spec.arrivals;
    std::map<std::string, std::map<std::string, Rat>> weights;  // resource -> config -> w
    for (int t = 0; t < spec.arrivals; ++t) {
        int m = uniform_int(rng, 1, spec.menu_max);
        for (int j = 0; j < m; ++j) {
            int size = uniform_int(rng, 1, spec.resources);
            std::vector<int> members = pick_distinct(rng, spec.resources, size);
            std::sort(members.begin(), members.end());
            std::vector<std::string> rnames;
            std::string id = "t" + std::to_string(t + 1) + "_" + std::to_string(j + 1);
            ActivationSpec a;
            for (int i : members) {
                const std::string& rname = names[static_cast<std::size_t>(i)];
                rnames.push_back(rname);
                weights[rname][id] = rand_value(rng);
                if (!spec.allow_p_one_only) a.marginals.emplace(rname, rand_prob(rng));
            }
            data.configurations.push_back({id, t + 1, rnames, false});
            if (!a.marginals.empty()) data.activation.emplace(id, a);
        }
    }
    for (const auto& r : data.resources)
        data.objectives.emplace_back(r.name, weighted_config_spec(weights[r.name], true, 1));
    return data;
}

InstanceData gen_random_explicit(const GeneratorSpec& spec, Rng& rng) {
    // Weighted-coverage tables: each configuration covers a random subset of
    // a tiny universe; the induced set function is monotone submodular.
    InstanceData data = matching_skeleton(spec, rng, !spec.allow_p_one_only, false);
    std::map<std::string, std::vector<int>> owned;  // resource -> config positions
    for (std::size_t e = 0; e < data.configurations.size(); ++e)
        owned[data.configurations[e].resources.front()].push_back(static_cast<int>(e));

    for (const auto& r : data.resources) {
        const auto& mine = owned[r.name];
        constexpr int universe = 3;
        std::vector<Rat> uw;
        for (int u = 0; u < universe; ++u) uw.push_back(rand_value(rng));
        std::vector<std::uint32_t> covers;
        for (std::size_t j = 0; j < mine.size(); ++j)
            covers.push_back(static_cast<std::uint32_t>(rng()) & ((1u << universe) - 1u));

        std::vector<std::pair<std::vector<std::string>, Rat>> table;
        for (std::uint32_t mask = 0; mask < (1u << mine.size()); ++mask) {
            std::vector<std::string> ids;
            std::uint32_t covered = 0;
            for (std::size_t j = 0; j < mine.size(); ++j)
                if (mask & (1u << j)) {
                    ids.push_back(data.configurations[static_cast<std::size_t>(
                                                          mine[j])].id);
                    covered |= covers[j];
                }
            Rat value(0);
            for (int u = 0; u < universe; ++u)
                if (covered & (1u << u)) value += uw[static_cast<std::size_t>(u)];
            table.emplace_back(std::move(ids), std::move(value));
        }
        data.objectives.emplace_back(r.name, explicit_table_spec(std::move(table)));
    }
    return data;
}

bool tractable(const Instance& inst) {
    long long space = 1, branch_space = 1, columns = 0;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        space *= static_cast<long long>(inst.menu(t).size()) + 1;
        long long branch = 1;
        for (int e : inst.menu(t))
            branch += static_cast<long long>(
                inst.activation().per_config[static_cast<std::size_t>(e)].outcomes.size());
        branch_space *= branch;
        if (space > 100000 || branch_space > 200000) return false;
    }
    for (std::size_t i = 0; i < inst.resources().size(); ++i) {
        if (inst.owned(static_cast<int>(i)).size() > 10) return false;
        columns += 1LL << inst.owned(static_cast<int>(i)).size();
    }
    return columns <= 4096;
}

}  // namespace

Instance gen(const GeneratorSpec& spec) {
    if (!spec.fixture.empty()) {
        if (spec.fixture == "sr-ex") return sr_ex();
        if (spec.fixture == "reuse-ex") return reuse_ex();
        throw ValidationError("unknown fixture: " + spec.fixture);
    }
    if (spec.resources < 1 || spec.arrivals < 1 || spec.menu_max < 1)
        throw ValidationError("generator sizes must be positive");

    std::uint64_t seed = spec.seed;
    for (int attempt = 0; attempt < 100; ++attempt, seed += 0x9e3779b97f4a7c15ull) {
        Rng rng(seed);
        InstanceData data;
        if (spec.family == "obm")
            data = gen_obm(spec, rng);
        else if (spec.family == "stochastic-rewards")
            data = gen_stochastic(spec, rng);
        else if (spec.family == "assortment-mnl")
            data = gen_assortment(spec, rng);
        else if (spec.family == "patience")
            data = gen_patience(spec, rng);
        else if (spec.family == "reusable")
            data = gen_reusable(spec, rng);
        else if (spec.family == "wholepage")
            data = gen_wholepage(spec, rng);
        else if (spec.family == "random-explicit")
            data = gen_random_explicit(spec, rng);
        else
            throw ValidationError("unknown generator family: " + spec.family);
        data.name = spec.family + "-" + std::to_string(spec.seed);
        Instance inst = Instance::build(data);
        if (tractable(inst)) return inst;
    }
    throw ValidationError("generator could not produce a tractable instance");
}

ExperimentReport run_experiment(const Instance& inst, const StageSet& stages,
                                const std::string& family, long long cap) {
    ExperimentReport report;
    report.row.instance_id = inst.name();
    report.row.family = family;
    auto fail = [&](const std::string& what) {
        if (report.note.empty()) report.note = what;
    };
    auto stage = [&](const char* name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            throw ValidationError(std::string(name) + ": " + e.what());
        }
    };

    GreedyResult greedy;
    OptResult opt;
    ConcaveClosureSolution optc;
    if (stages.greedy) stage("greedy", [&] {
        greedy = run_greedy(inst);
        report.row.alg = greedy.total;
    });
    if (stages.opt) stage("opt", [&] {
        opt = opt_bruteforce(inst, cap);
        report.row.opt = opt.value;
    });
    if (stages.aopt) stage("aopt", [&] { report.row.aopt = aopt_expectimax(inst, cap).value; });
    if (stages.optc) stage("optc", [&] {
        optc = solve_optc(inst);
        report.row.optc = optc.value;
        if (report.row.alg)
            report.row.ratio_alg_optc =
                optc.value == 0 ? Rat(1) : *report.row.alg / optc.value;
    });

    if (stages.certificate && stages.greedy && stages.opt) {
        stage("certificate", [&] {
            DualCertificate cert = build_certificate(inst, greedy.trace, opt.alloc);
            report.row.cert_ok = verify_certificate(inst, cert, greedy.total, opt.alloc).holds;
        });
        if (!report.row.cert_ok) fail("dual certificate does not hold");
    }

    if (report.row.opt && report.row.aopt && *report.row.opt > *report.row.aopt) {
        report.chain_ok = false;
        fail("OPT exceeds AOPT");
    }
    if (report.row.aopt && report.row.optc && *report.row.aopt > *report.row.optc) {
        report.chain_ok = false;
        fail("AOPT exceeds OPTC");
    }
    if (report.row.alg && report.row.optc && Rat(2) * *report.row.alg < *report.row.optc) {
        report.chain_ok = false;
        fail("ALG falls below OPTC/2");
    }
    if (report.row.alg && report.row.opt && Rat(2) * *report.row.alg < *report.row.opt) {
        report.chain_ok = false;
        fail("ALG falls below OPT/2");
    }

    if (stages.properties) stage("properties", [&] {
        for (std::size_t i = 0; i < inst.resources().size(); ++i) {
            if (inst.resources()[i].dummy) continue;
            const auto& owned = inst.owned(static_cast<int>(i));
            if (owned.size() > kOrderExhaustiveCap) continue;
            ElementSet ground{std::vector<int>(owned)};
            if (!check_monotone(inst.objective(static_cast<int>(i)), ground, inst).holds ||
                !check_so(inst.objective(static_cast<int>(i)), owned, inst).holds) {
                report.row.checks_ok = false;
                fail("objective property check failed for resource " +
                     inst.resources()[i].name);
            }
        }
    });

    if (stages.reveal && stages.optc) {
        stage("reveal", [&] {
            RevealedInstance rev = build_reveal(inst, optc);
            RevealReport rr = verify_reveal(rev, cap);
            report.reveal_ok = rr.holds;
            if (!rr.holds) fail("reveal verification: " + rr.note);
        });
    }
    return report;
}

FuzzReport fuzz(const GeneratorSpec& spec, long long trials, std::uint64_t seed,
                const std::string& repro_dir, bool with_reveal) {
    FuzzReport report;
    report.trials = trials;
    Rng master(seed);
    StageSet stages;
    stages.reveal = with_reveal;
    for (long long trial = 0; trial < trials; ++trial) {
        GeneratorSpec gs = spec;
        gs.fixture.clear();
        gs.seed = master();
        Instance inst = gen(gs);
        ExperimentReport er = run_experiment(inst, stages, spec.family);
        bool ok = er.chain_ok && er.reveal_ok && er.row.cert_ok && er.row.checks_ok;
        if (!ok) {
            ++report.violations;
            if (report.note.empty()) report.note = er.note;
            if (!repro_dir.empty()) {
                std::filesystem::create_directories(repro_dir);
                std::string path =
                    repro_dir + "/repro-" + spec.family + "-" + std::to_string(trial) + ".json";
                std::ofstream(path) << serialize_instance(inst);
                report.repro_files.push_back(path);
            }
        }
        report.rows.push_back(std::move(er.row));
    }
    return report;
}

}  // namespace osw
