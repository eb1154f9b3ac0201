// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "osw/generators.hpp"
#include "osw/uiid.hpp"

using namespace osw;

namespace {

int failures = 0;

void report(const std::string& name, bool ok) {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL") << std::endl;
    if (!ok) ++failures;
}

void run(const std::string& name, bool (*body)()) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cout << name << " raised: " << e.what() << std::endl;
    }
    report(name, ok);
}

// Shared fuzz corpus: small instances spanning every generator family.
struct CorpusRow {
    Instance inst;
    std::string family;
    Rat alg{0};
    Rat opt{0};
    Rat aopt{0};
    Rat optc{0};
    Rat alg_eta{0};
    bool cert_ok = false;
    bool zeta_two = false;
    Allocation opt_alloc;
    ConcaveClosureSolution ccs;
};

std::vector<CorpusRow>& corpus() {
    static std::vector<CorpusRow> rows = [] {
        const std::vector<std::string> families = {
            "obm",      "stochastic-rewards", "assortment-mnl",  "patience",
            "reusable", "wholepage",          "random-explicit"};
        std::vector<CorpusRow> out;
        std::uint64_t round = 0;
        while (out.size() < 500) {
            for (std::size_t k = 0; k < families.size() && out.size() < 500; ++k) {
                GeneratorSpec gs;
                gs.family = families[k];
                gs.resources = 1 + static_cast<int>(round % 3);
                gs.arrivals = 1 + static_cast<int>(round % 5);
                gs.menu_max = 1 + static_cast<int>((round / 2) % 3);
                gs.seed = round * 131 + k;
                Instance inst = [&]() -> Instance {
                    try {
                        return gen(gs);
                    } catch (const ValidationError&) {
                        // Some size combinations are never tractable for a
                        // family (e.g. wide patience menus); shrink and retry.
                        gs.arrivals = std::min(gs.arrivals, 2);
                        gs.menu_max = 1;
                        return gen(gs);
                    }
                }();
                CorpusRow row{std::move(inst), families[k]};

                GreedyResult greedy = run_greedy(row.inst);
                OptResult opt = opt_bruteforce(row.inst);
                row.alg = greedy.total;
                row.opt = opt.value;
                row.opt_alloc = opt.alloc;
                row.aopt = aopt_expectimax(row.inst).value;
                row.ccs = solve_optc(row.inst);
                row.optc = row.ccs.value;

                DualCertificate cert = build_certificate(row.inst, greedy.trace, opt.alloc);
                row.zeta_two = cert.zeta == Rat(2);
                row.cert_ok = verify_certificate(row.inst, cert, greedy.total, opt.alloc).holds;

                row.alg_eta =
                    run_greedy_eta(row.inst, adversarial_selector(rat(1, 2)), rat(1, 2)).total;
                out.push_back(std::move(row));
            }
            ++round;
        }
        return out;
    }();
    return rows;
}

bool a1() {
    Instance inst = sr_ex();
    return run_greedy(inst).total == Rat(1) && opt_bruteforce(inst).value == Rat(1) &&
           aopt_expectimax(inst).value == rat(5, 4) && solve_optc(inst).value == rat(5, 4);
}

bool a2() {
    Instance inst = reuse_ex();
    const ValueOracle& f = inst.objective(0);
    const std::vector<std::pair<std::vector<int>, Rat>> table = {
        {{0}, Rat(1)},    {{1}, Rat(1)},    {{2}, Rat(1)},       {{0, 1}, Rat(1)},
        {{0, 2}, Rat(2)}, {{1, 2}, Rat(1)}, {{0, 1, 2}, Rat(2)},
    };
    for (const auto& [elems, want] : table)
        if (f.evaluate(ElementSet{std::vector<int>(elems)}) != want) return false;

    PropertyReport sub = check_submodular(f, ElementSet({0, 1, 2}), inst);
    if (sub.holds || !sub.witness) return false;
    if (sub.witness->sets[0] != ElementSet({1}) || sub.witness->sets[1] != ElementSet({1, 2}) ||
        sub.witness->element != 0)
        return false;

    return check_so(f, {0, 1, 2}, inst).holds;
}

bool a3() {
    if (corpus().size() < 500) return false;
    for (const CorpusRow& row : corpus())
        if (Rat(2) * row.alg < row.opt || !row.zeta_two || !row.cert_ok) return false;
    return true;
}

bool a4() {
    for (const CorpusRow& row : corpus())
        if (row.opt > row.aopt || row.aopt > row.optc || Rat(2) * row.alg < row.optc)
            return false;
    return true;
}

bool a5() {
    long long verified = 0;
    for (const CorpusRow& row : corpus()) {
        if (row.inst.configs().size() > 5) continue;
        RevealedInstance rev = build_reveal(row.inst, row.ccs);
        if (!verify_reveal(rev).holds) return false;
        ++verified;
    }
    return verified >= 50;
}

// Order agreement across arrival-consistent orders (modularity permitting).
bool lemma1() {
    long long checked = 0;
    for (const CorpusRow& row : corpus()) {
        if (row.inst.configs().size() > 6) continue;
        for (std::size_t i = 0; i < row.inst.resources().size(); ++i) {
            if (row.inst.resources()[i].dummy) continue;
            PropertyReport rep = check_lemma_all(row.inst.objective(static_cast<int>(i)),
                                                 row.inst);
            if (!rep.holds) return false;
            if (rep.precondition_ok) checked += rep.checked;
        }
    }
    return checked >= 100;
}

// The reusable objective satisfies the order property on the arrival order.
bool lemma2() {
    long long checked = 0;
    for (const CorpusRow& row : corpus()) {
        if (row.family != "reusable") continue;
        for (std::size_t i = 0; i < row.inst.resources().size(); ++i) {
            const auto& owned = row.inst.owned(static_cast<int>(i));
            if (owned.empty() || owned.size() > kOrderExhaustiveCap) continue;
            PropertyReport rep = check_so(row.inst.objective(static_cast<int>(i)), owned,
                                          row.inst);
            if (!rep.holds || !rep.exhaustive) return false;
            checked += rep.checked;
        }
    }
    return checked > 0;
}

// Interleaved-partition bound on random alternating partitions of N_i.
bool lemma3() {
    Rng rng(99);
    long long checked = 0;
    for (const CorpusRow& row : corpus()) {
        for (std::size_t i = 0; i < row.inst.resources().size(); ++i) {
            const auto& owned = row.inst.owned(static_cast<int>(i));
            if (owned.size() < 2) continue;
            const ValueOracle& f = row.inst.objective(static_cast<int>(i));
            ElementSet S{std::vector<int>(owned)};
            for (int rep = 0; rep < 3; ++rep) {
                std::vector<std::pair<ElementSet, ElementSet>> blocks;
                std::size_t pos = 0;
                while (pos < owned.size()) {
                    auto chunk = [&](std::size_t len) {
                        std::vector<int> part;
                        for (std::size_t k = 0; k < len && pos < owned.size(); ++k)
                            part.push_back(owned[pos++]);
                        return ElementSet(std::move(part));
                    };
                    ElementSet O = chunk(1 + rng() % 2);
                    ElementSet E = chunk(rng() % 3);
                    blocks.emplace_back(std::move(O), std::move(E));
                }
                if (!check_interleaved_bound(f, S, blocks, row.inst).holds) return false;
                ++checked;
            }
        }
    }
    return checked >= 100;
}

// Sums of order-compatible objectives keep the order property.
bool lemma4() {
    long long checked = 0;
    for (const CorpusRow& row : corpus()) {
        if (row.family != "reusable" || row.inst.configs().size() > 6) continue;
        InstanceData d = row.inst.data();
        for (auto& [rname, spec] : d.objectives)
            spec = sum_spec({{Rat(1), spec}, {rat(1, 2), coverage_spec()}});
        Instance mixed = Instance::build(d);
        for (std::size_t i = 0; i < mixed.resources().size(); ++i) {
            const auto& owned = mixed.owned(static_cast<int>(i));
            if (owned.empty()) continue;
            PropertyReport rep = check_so(mixed.objective(static_cast<int>(i)), owned, mixed);
            if (!rep.holds) return false;
            checked += rep.checked;
        }
    }
    return checked > 0;
}

bool a6() { return lemma1() && lemma2() && lemma3() && lemma4(); }

bool a7() {
    const double threshold = 1.0 - std::exp(-1.0) - 0.02;
    int fixture = 0;
    for (TypeDistribution dist : {uiid_matching(), uiid_stochastic(), uiid_budgets()}) {
        RatioEstimate est = estimate_ratio(dist, 10000, 4242 + fixture++);
        if (!est.per_path_half) return false;
        if (est.lower99 <= threshold) return false;
    }
    return fixture == 3;
}

// Dense bounded-feasible LPs solved two ways: simplex vs vertex enumeration.
struct DenseLp {
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    std::vector<Rat> c;
};

LinearProgram to_lp(const DenseLp& d) {
    LinearProgram lp;
    for (std::size_t j = 0; j < d.c.size(); ++j)
        lp.add_variable("x" + std::to_string(j), d.c[j]);
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        LinearConstraint con;
        for (std::size_t j = 0; j < d.c.size(); ++j)
            if (d.rows[r][j] != 0) con.coeffs.emplace_back(static_cast<int>(j), d.rows[r][j]);
        con.sense = 'L';
        con.rhs = d.rhs[r];
        lp.add_constraint(std::move(con));
    }
    return lp;
}

bool vertex_enumeration_opt(const DenseLp& d, Rat& best) {
    const std::size_t n = d.c.size();
    std::vector<std::vector<Rat>> all = d.rows;
    std::vector<Rat> allb = d.rhs;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rat> axis(n, Rat(0));
        axis[j] = Rat(1);
        all.push_back(std::move(axis));
        allb.push_back(Rat(0));
    }

    bool found = false;
    std::vector<std::size_t> pick(n);
    std::vector<bool> select(all.size(), false);
    std::fill(select.end() - static_cast<long>(n), select.end(), true);
    std::sort(select.begin(), select.end());
    do {
        std::size_t k = 0;
        for (std::size_t r = 0; r < all.size(); ++r)
            if (select[r]) pick[k++] = r;

        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t j = 0; j < n; ++j) m[r][j] = all[pick[r]][j];
            m[r][n] = allb[pick[r]];
        }
        bool singular = false;
        for (std::size_t col = 0; col < n && !singular; ++col) {
            std::size_t piv = col;
            while (piv < n && m[piv][col] == 0) ++piv;
            if (piv == n) {
                singular = true;
                break;
            }
            std::swap(m[col], m[piv]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || m[r][col] == 0) continue;
                Rat factor = m[r][col] / m[col][col];
                for (std::size_t j = col; j <= n; ++j) m[r][j] -= factor * m[col][j];
            }
        }
        if (singular) continue;
        std::vector<Rat> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = m[j][n] / m[j][j];

        bool feasible = true;
        for (std::size_t j = 0; j < n && feasible; ++j) feasible = x[j] >= 0;
        for (std::size_t r = 0; r < d.rows.size() && feasible; ++r) {
            Rat lhs(0);
            for (std::size_t j = 0; j < n; ++j) lhs += d.rows[r][j] * x[j];
            feasible = lhs <= d.rhs[r];
        }
        if (!feasible) continue;
        Rat value(0);
        for (std::size_t j = 0; j < n; ++j) value += d.c[j] * x[j];
        if (!found || value > best) best = value;
        found = true;
    } while (std::next_permutation(select.begin(), select.end()));
    return found;
}

bool a8() {
    std::mt19937_64 rng(8088);
    std::uniform_int_distribution<int> nvars(2, 6), nrows(1, 4);
    std::uniform_int_distribution<int> coeff(-2, 3), obj(-3, 3), rhs(0, 6), bound(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        DenseLp d;
        const int n = nvars(rng);
        for (int j = 0; j < n; ++j) d.c.push_back(Rat(obj(rng)));
        for (int r = 0, m = nrows(rng); r < m; ++r) {
            std::vector<Rat> row;
            for (int j = 0; j < n; ++j) row.push_back(Rat(coeff(rng)));
            d.rows.push_back(std::move(row));
            d.rhs.push_back(Rat(rhs(rng)));
        }
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> row(static_cast<std::size_t>(n), Rat(0));
            row[static_cast<std::size_t>(j)] = Rat(1);
            d.rows.push_back(std::move(row));
            d.rhs.push_back(Rat(bound(rng)));
        }

        LpSolution sol = simplex_solve(to_lp(d));
        if (sol.status != LpStatus::Optimal) return false;
        Rat reference(0);
        if (!vertex_enumeration_opt(d, reference)) return false;
        if (sol.value != reference) return false;
    }
    return true;
}

bool a9() {
    for (const CorpusRow& row : corpus())
        if (Rat(3) * row.alg_eta < row.opt) return false;
    return true;
}

}  // namespace

int main() {
    run("A1", a1);
    run("A2", a2);
    run("A3", a3);
    run("A4", a4);
    run("A5", a5);
    run("A6", a6);
    run("A7", a7);
    run("A8", a8);
    run("A9", a9);
    return failures == 0 ? 0 : 1;
}
