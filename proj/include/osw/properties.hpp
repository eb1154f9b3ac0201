#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osw/oracles.hpp"

namespace osw {

// A violating tuple; the role of each set depends on the property checked.
struct PropertyWitness {
    std::vector<ElementSet> sets;
    int element = -1;
    std::vector<int> counts_x;  // DR checks only
    std::vector<int> counts_y;
    int type = -1;
};

struct PropertyReport {
    std::string property;
    bool holds = true;
    std::optional<PropertyWitness> witness;
    long long checked = 0;
    bool exhaustive = true;  // false when the tuple space was sampled
    bool precondition_ok = true;
    std::string note;
};

inline constexpr std::size_t kMonotoneExhaustiveCap = 12;
inline constexpr std::size_t kOrderExhaustiveCap = 8;
inline constexpr long long kSampledTuples = 20000;

// f(S) ≤ f(S ∪ e) over all in-domain pairs within the ground set.
PropertyReport check_monotone(const ValueOracle& f, const ElementSet& ground,
                              const Instance& inst);

// f(e | A) ≤ f(e | B) for all B ⊆ A, e ∉ A. Full-domain oracles only.
PropertyReport check_submodular(const ValueOracle& f, const ElementSet& ground,
                                const Instance& inst);

// Submodular-order check for a total order (a permutation of the ground
// set): f(C | A) ≤ f(C | B) for all order-nested B ⊆ A (B a prefix of A, so
// A \ B succeeds B) and C whose elements all succeed every element of A in
// the order. Subfeasible-only oracles restrict the quantification to
// subfeasible A ∪ C and B ∪ C.
PropertyReport check_so(const ValueOracle& f, const std::vector<int>& order,
                        const Instance& inst);

// Enumerates every arrival-consistent total order over N and asserts the
// submodular-order check agrees across all of them (holds for all iff for
// one). Requires within-arrival modularity as a precondition; when that
// fails the report carries precondition_ok = false and no verdict.
PropertyReport check_lemma_all(const ValueOracle& f, const Instance& inst);

// f(N_t ∪ S) = f(S) + Σ_{e∈N_t} f(e | S) for every arrival t and S ⊆ N\N_t.
PropertyReport check_eq1(const ValueOracle& f, const Instance& inst);

// Interleaved-partition bound: blocks (O_1,E_1),...,(O_m,E_m) partition S and
// alternate in the arrival-consistent (index) order; asserts
// f(S) ≤ f(∪_ℓ E_ℓ) + Σ_ℓ f(O_ℓ | ∪_{j<ℓ} E_j).
PropertyReport check_interleaved_bound(const ValueOracle& f, const ElementSet& S,
                                       const std::vector<std::pair<ElementSet, ElementSet>>& blocks,
                                       const Instance& inst);

// Monotone multiset function on per-type counts, f(0) = 0.
class MultisetOracle {
public:
    virtual ~MultisetOracle() = default;
    virtual std::string family() const = 0;
    virtual Rat evaluate(const std::vector<int>& counts) const = 0;

    Rat marginal(int type, const std::vector<int>& counts) const;
};

// Diminishing returns on count vectors: f(x+e_t) − f(x) ≤ f(y+e_t) − f(y)
// for all y ≤ x ≤ cap componentwise and every type t.
PropertyReport check_dr(const MultisetOracle& f, const std::vector<int>& cap);

}  // namespace osw
