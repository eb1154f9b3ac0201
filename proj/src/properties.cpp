#include "osw/properties.hpp"

#include <algorithm>
#include <random>

namespace osw {

namespace {

ElementSet from_mask(const std::vector<int>& elems, std::uint32_t mask) {
    std::vector<int> out;
    for (std::size_t j = 0; j < elems.size(); ++j)
        if (mask & (1u << j)) out.push_back(elems[j]);
    return ElementSet(std::move(out));
}

bool in_domain(const ValueOracle& f, const ElementSet& S, const Instance& inst) {
    return f.domain() == ValueOracle::Domain::Full || inst.core()->is_subfeasible(S);
}

using SampleRng = std::mt19937_64;
constexpr std::uint64_t kSampleSeed = 0x5eed;

}  // namespace

PropertyReport check_monotone(const ValueOracle& f, const ElementSet& ground,
                              const Instance& inst) {
    PropertyReport report;
    report.property = "monotone";
    const auto& elems = ground.elems();
    const std::size_t n = elems.size();

    auto check_pair = [&](std::uint32_t mask, std::size_t j) -> bool {
        if (mask & (1u << j)) return true;
        ElementSet S = from_mask(elems, mask);
        ElementSet Se = S.with(elems[j]);
        if (!in_domain(f, S, inst) || !in_domain(f, Se, inst)) return true;
        ++report.checked;
        if (f.evaluate(S) <= f.evaluate(Se)) return true;
        report.holds = false;
        report.witness = PropertyWitness{{S, Se}, elems[j], {}, {}, -1};
        return false;
    };

    if (n <= kMonotoneExhaustiveCap) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
            for (std::size_t j = 0; j < n; ++j)
                if (!check_pair(mask, j)) return report;
    } else {
        report.exhaustive = false;
        SampleRng rng(kSampleSeed);
        for (long long trial = 0; trial < kSampledTuples; ++trial)
            if (!check_pair(static_cast<std::uint32_t>(rng()) & ((1u << std::min<std::size_t>(n, 31)) - 1),
                            rng() % n))
                return report;
    }
    return report;
}

PropertyReport check_submodular(const ValueOracle& f, const ElementSet& ground,
                                const Instance& inst) {
    // Subfeasibility is downward closed, so a subfeasible ground set keeps
    // every quantified subset inside a subfeasible-only oracle's domain.
    if (f.domain() != ValueOracle::Domain::Full && !inst.core()->is_subfeasible(ground))
        throw ValidationError("submodularity check needs every subset in the oracle's domain");
    PropertyReport report;
    report.property = "submodular";
    const auto& elems = ground.elems();
    const std::size_t n = elems.size();

    auto check_triple = [&](std::size_t j, std::uint32_t a_mask, std::uint32_t b_mask) -> bool {
        ElementSet A = from_mask(elems, a_mask);
        ElementSet B = from_mask(elems, b_mask);
        ++report.checked;
        if (f.marginal(elems[j], A) <= f.marginal(elems[j], B)) return true;
        report.holds = false;
        report.witness = PropertyWitness{{B, A}, elems[j], {}, {}, -1};
        return false;
    };

    if (n <= kMonotoneExhaustiveCap) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint32_t universe = static_cast<std::uint32_t>((1u << n) - 1) & ~(1u << j);
            for (std::uint32_t a = 0;; a = (a - universe) & universe) {
                if ((a & universe) == a) {
                    for (std::uint32_t b = 0;; b = (b - a) & a) {
                        if (!check_triple(j, a, b)) return report;
                        if (b == a) break;
                    }
                }
                if (a == universe) break;
            }
        }
    } else {
        report.exhaustive = false;
        SampleRng rng(kSampleSeed);
        for (long long trial = 0; trial < kSampledTuples; ++trial) {
            std::size_t j = rng() % n;
            std::uint32_t full = static_cast<std::uint32_t>((1u << std::min<std::size_t>(n, 31)) - 1);
            std::uint32_t a = static_cast<std::uint32_t>(rng()) & full & ~(1u << j);
            std::uint32_t b = static_cast<std::uint32_t>(rng()) & a;
            if (!check_triple(j, a, b)) return report;
        }
    }
    return report;
}

namespace {

void validate_order(const std::vector<int>& order, const Instance& inst) {
    for (std::size_t k = 1; k < order.size(); ++k)
        if (inst.config(order[k - 1]).arrival > inst.config(order[k]).arrival)
            throw ValidationError("order is not arrival-consistent");
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("order repeats an element");
}

}  // namespace

PropertyReport check_so(const ValueOracle& f, const std::vector<int>& order,
                        const Instance& inst) {
    validate_order(order, inst);
    PropertyReport report;
    report.property = "submodular-order";
    const std::size_t n = order.size();

    auto check_triple = [&](std::uint32_t a_mask, std::uint32_t b_mask,
                            std::uint32_t c_mask) -> bool {
        ElementSet A = from_mask(order, a_mask);
        ElementSet B = from_mask(order, b_mask);
        ElementSet C = from_mask(order, c_mask);
        ElementSet AC = A.unite(C);
        ElementSet BC = B.unite(C);
        if (!in_domain(f, A, inst) || !in_domain(f, B, inst) || !in_domain(f, AC, inst) ||
            !in_domain(f, BC, inst))
            return true;
        ++report.checked;
        if (f.evaluate(AC) - f.evaluate(A) <= f.evaluate(BC) - f.evaluate(B)) return true;
        report.holds = false;
        report.witness = PropertyWitness{{B, A, C}, -1, {}, {}, -1};
        return false;
    };

    // Order-nested B ⊆ A: B is a prefix of A, i.e. b = a & ((1 << s) - 1)
    // for some split position s.
    auto prefix_of = [](std::uint32_t a, std::size_t s) {
        return s >= 31 ? a : a & ((1u << s) - 1u);
    };

    if (n > kOrderExhaustiveCap) {
        report.exhaustive = false;
        SampleRng rng(kSampleSeed);
        for (long long trial = 0; trial < kSampledTuples; ++trial) {
            std::uint32_t full = static_cast<std::uint32_t>((1u << std::min<std::size_t>(n, 31)) - 1);
            std::uint32_t a = static_cast<std::uint32_t>(rng()) & full;
            std::uint32_t b = prefix_of(a, rng() % (n + 1));
            std::size_t top = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (a & (1u << k)) top = k + 1;
            std::uint32_t suffix = full & ~((1u << top) - 1u);
            std::uint32_t c = static_cast<std::uint32_t>(rng()) & suffix;
            if (c == 0) continue;
            if (!check_triple(a, b, c)) return report;
        }
        return report;
    }

    for (std::uint32_t a = 0; a < (1u << n); ++a) {
        std::size_t top = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (a & (1u << k)) top = k + 1;
        const std::uint32_t suffix = ((1u << n) - 1u) & ~((1u << top) - 1u);
        for (std::uint32_t c = suffix;; c = (c - 1) & suffix) {
            if (c != 0) {
                std::uint32_t prev = 1u;  // != 0 so the empty prefix runs once
                for (std::size_t s = 0; s <= n; ++s) {
                    std::uint32_t b = prefix_of(a, s);
                    if (s > 0 && b == prev) continue;
                    prev = b;
                    if (!check_triple(a, b, c)) return report;
                }
            }
            if (c == 0) break;
        }
    }
    return report;
}

PropertyReport check_eq1(const ValueOracle& f, const Instance& inst) {
    PropertyReport report;
    report.property = "within-arrival-modularity";
    std::vector<int> all;
    for (std::size_t e = 0; e < inst.configs().size(); ++e) all.push_back(static_cast<int>(e));

    for (int t = 0; t < inst.num_arrivals(); ++t) {
        const auto& menu = inst.menu(t);
        std::vector<int> rest;
        for (int e : all)
            if (inst.config(e).arrival != t) rest.push_back(e);
        if (rest.size() > kMonotoneExhaustiveCap) {
            report.exhaustive = false;
            continue;
        }
        ElementSet Nt{std::vector<int>(menu)};
        for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
            ElementSet S = from_mask(rest, mask);
            ElementSet full = S.unite(Nt);
            if (!in_domain(f, S, inst) || !in_domain(f, full, inst)) continue;
            bool skip = false;
            Rat sum = f.evaluate(S);
            for (int e : menu) {
                ElementSet Se = S.with(e);
                if (!in_domain(f, Se, inst)) {
                    skip = true;
                    break;
                }
                sum += f.evaluate(Se) - f.evaluate(S);
            }
            if (skip) continue;
            ++report.checked;
            if (f.evaluate(full) == sum) continue;
            report.holds = false;
            report.witness = PropertyWitness{{S, Nt}, -1, {}, {}, -1};
            return report;
        }
    }
    return report;
}

PropertyReport check_lemma_all(const ValueOracle& f, const Instance& inst) {
    PropertyReport report;
    report.property = "order-agreement";
    if (inst.configs().size() > kOrderExhaustiveCap)
        throw ValidationError("order-agreement check requires |N| <= 8");

    PropertyReport eq1 = check_eq1(f, inst);
    if (!eq1.holds) {
        report.precondition_ok = false;
        report.note = "within-arrival modularity precondition fails; no verdict";
        report.witness = eq1.witness;
        return report;
    }

    std::vector<std::vector<int>> menus;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        auto menu = inst.menu(t);
        std::sort(menu.begin(), menu.end());
        if (!menu.empty()) menus.push_back(std::move(menu));
    }

    bool first = true;
    bool first_verdict = false;
    std::vector<int> first_order;
    long long orders = 0;
    // Product of per-arrival permutations = all arrival-consistent orders.
    std::vector<std::vector<int>> perms = menus;
    for (;;) {
        std::vector<int> order;
        for (const auto& p : perms) order.insert(order.end(), p.begin(), p.end());
        PropertyReport so = check_so(f, order, inst);
        ++orders;
        if (first) {
            first = false;
            first_verdict = so.holds;
            first_order = order;
        } else if (so.holds != first_verdict) {
            report.holds = false;
            report.witness = PropertyWitness{{ElementSet(first_order), ElementSet(order)}, -1, {}, {}, -1};
            report.note = "two arrival-consistent orders disagree";
        }

        std::size_t k = perms.size();
        while (k > 0 && !std::next_permutation(perms[k - 1].begin(), perms[k - 1].end())) --k;
        if (k == 0) break;
    }
    report.checked = orders;
    return report;
}

PropertyReport check_interleaved_bound(const ValueOracle& f, const ElementSet& S,
                                       const std::vector<std::pair<ElementSet, ElementSet>>& blocks,
                                       const Instance& inst) {
    (void)inst;
    PropertyReport report;
    report.property = "interleaved-partition-bound";

    // Blocks must partition S and alternate O_1 ≤ E_1 ≤ O_2 ≤ ... in index
    // (arrival-consistent) order.
    std::vector<int> flattened;
    int prev_max = -1;
    auto take = [&](const ElementSet& block) {
        if (block.empty()) return;
        if (block.elems().front() <= prev_max)
            throw ValidationError("partition blocks do not alternate in order");
        prev_max = block.elems().back();
        flattened.insert(flattened.end(), block.elems().begin(), block.elems().end());
    };
    for (const auto& [O, E] : blocks) {
        take(O);
        take(E);
    }
    std::sort(flattened.begin(), flattened.end());
    if (flattened != S.elems()) throw ValidationError("blocks do not partition S");

    ElementSet e_union;
    Rat rhs(0);
    for (const auto& [O, E] : blocks) {
        Rat before = f.evaluate(e_union);
        rhs += f.evaluate(e_union.unite(O)) - before;  // f(O_ℓ | ∪_{j<ℓ} E_j)
        e_union = e_union.unite(E);
    }
    rhs += f.evaluate(e_union);
    ++report.checked;
    if (f.evaluate(S) > rhs) {
        report.holds = false;
        report.witness = PropertyWitness{{S, e_union}, -1, {}, {}, -1};
    }
    return report;
}

Rat MultisetOracle::marginal(int type, const std::vector<int>& counts) const {
    std::vector<int> bumped = counts;
    bumped[static_cast<std::size_t>(type)] += 1;
    return evaluate(bumped) - evaluate(counts);
}

PropertyReport check_dr(const MultisetOracle& f, const std::vector<int>& cap) {
    PropertyReport report;
    report.property = "diminishing-returns";
    const std::size_t n = cap.size();

    long long space = 1;
    for (int c : cap) {
        space *= c + 1;
        if (space > kSampledTuples) break;
    }

    auto check_tuple = [&](const std::vector<int>& x, const std::vector<int>& y,
                           std::size_t t) -> bool {
        ++report.checked;
        if (f.marginal(static_cast<int>(t), x) <= f.marginal(static_cast<int>(t), y)) return true;
        report.holds = false;
        report.witness = PropertyWitness{{}, -1, x, y, static_cast<int>(t)};
        return false;
    };

    if (space <= kSampledTuples) {
        std::vector<int> x(n, 0);
        for (;;) {
            std::vector<int> y(n, 0);
            for (;;) {
                for (std::size_t t = 0; t < n; ++t)
                    if (x[t] < cap[t] && !check_tuple(x, y, t)) return report;
                std::size_t k = n;
                while (k > 0 && ++y[k - 1] > x[k - 1]) y[--k] = 0;
                if (k == 0) break;
            }
            std::size_t k = n;
            while (k > 0 && ++x[k - 1] > cap[k - 1]) x[--k] = 0;
            if (k == 0) break;
        }
    } else {
        report.exhaustive = false;
        SampleRng rng(kSampleSeed);
        for (long long trial = 0; trial < kSampledTuples; ++trial) {
            std::vector<int> x(n), y(n);
            for (std::size_t t = 0; t < n; ++t) {
                x[t] = static_cast<int>(rng() % (static_cast<std::uint64_t>(cap[t]) + 1));
                y[t] = static_cast<int>(rng() % (static_cast<std::uint64_t>(x[t]) + 1));
            }
            std::size_t t = rng() % n;
            if (x[t] >= cap[t]) continue;
            if (!check_tuple(x, y, t)) return report;
        }
    }
    return report;
}

}  // namespace osw
