#include "osw/stochastic.hpp"

#include <algorithm>

namespace osw {

namespace {

void require_subfeasible_owned(const ElementSet& S, int resource, const Instance& inst) {
    if (!is_subfeasible(S, inst))
        throw ValidationError("set is not subfeasible");
    for (int e : S.elems())
        if (!inst.config(e).engages(resource))
            throw ValidationError("element outside N_i");
}

}  // namespace

Rat gamma(const ElementSet& X, const ElementSet& S, int resource, const Instance& inst) {
    require_subfeasible_owned(S, resource, inst);
    for (int e : X.elems())
        if (!S.contains(e)) throw ValidationError("gamma requires X to be a subset of S");
    Rat prob(1);
    for (int e : S.elems()) {
        Rat p = inst.p(resource, e);
        prob *= X.contains(e) ? p : Rat(1) - p;
    }
    return prob;
}

Rat expected_value(int resource, const ElementSet& S, const Instance& inst,
                   const ValueOracle& oracle) {
    ElementSet si = restrict_to(S, resource, inst);
    if (!is_subfeasible(si, inst)) throw ValidationError("set is not subfeasible");
    if (si.size() > kEnumerationCap)
        throw ValidationError("expected_value enumeration cap exceeded");

    // Only elements with 0 < p < 1 branch; p = 1 is forced in, p = 0 out.
    std::vector<int> sure, free;
    std::vector<Rat> p;
    for (int e : si.elems()) {
        Rat pe = inst.p(resource, e);
        if (pe == 1) {
            sure.push_back(e);
        } else if (pe != 0) {
            free.push_back(e);
            p.push_back(std::move(pe));
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
        total += weight * oracle.evaluate(ElementSet(std::move(subset)));
    }
    return total;
}

Rat expected_value(int resource, const ElementSet& S, const Instance& inst) {
    return expected_value(resource, S, inst, inst.objective(resource));
}

Rat expected_marginal(int resource, int e, const ElementSet& S, const Instance& inst,
                      const ValueOracle& oracle) {
    if (S.contains(e)) throw ValidationError("marginal of an element already in the set");
    if (!is_subfeasible(S.with(e), inst)) throw ValidationError("S ∪ e is not subfeasible");
    if (!inst.config(e).engages(resource)) return Rat(0);
    Rat pe = inst.p(resource, e);
    if (pe == 0) return Rat(0);

    ElementSet si = restrict_to(S, resource, inst);
    if (si.size() >= kEnumerationCap)
        throw ValidationError("expected_marginal enumeration cap exceeded");

    std::vector<int> sure, free;
    std::vector<Rat> p;
    for (int x : si.elems()) {
        Rat px = inst.p(resource, x);
        if (px == 1) {
            sure.push_back(x);
        } else if (px != 0) {
            free.push_back(x);
            p.push_back(std::move(px));
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
        ElementSet X(std::move(subset));
        total += weight * (oracle.evaluate(X.with(e)) - oracle.evaluate(X));
    }
    return pe * total;
}

Rat expected_marginal(int resource, int e, const ElementSet& S, const Instance& inst) {
    return expected_marginal(resource, e, S, inst, inst.objective(resource));
}

Rat welfare_marginal(int e, const ElementSet& S, const Instance& inst) {
    Rat total(0);
    for (int i : inst.config(e).resources)
        total += expected_marginal(i, e, S, inst);
    return total;
}

std::vector<int> ActivationOutcome::active_resources(const Instance& inst) const {
    std::vector<int> out;
    const auto& res = inst.config(config).resources;
    for (std::size_t j = 0; j < res.size(); ++j)
        if (active_mask & (1u << j)) out.push_back(res[j]);
    return out;
}

ActivationOutcome sample_outcome(int config, const Instance& inst, Rng& rng) {
    const auto& table = inst.activation().per_config.at(static_cast<std::size_t>(config));
    // Exact inverse-CDF draw: u / 2^64 against rational cumulative weights.
    const std::uint64_t u = rng();
    Rat point = Rat(mpz_class(std::to_string(u)), mpz_class(1));
    mpz_class two64(1);
    two64 <<= 64;
    point /= Rat(two64);
    Rat cum(0);
    ActivationOutcome out;
    out.config = config;
    for (const auto& [mask, prob] : table.outcomes) {
        cum += prob;
        if (point < cum) {
            out.active_mask = mask;
            return out;
        }
    }
    out.active_mask = table.outcomes.empty() ? 0 : table.outcomes.back().first;
    return out;
}

}  // namespace osw
