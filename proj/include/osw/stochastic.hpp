#pragma once

#include <cstdint>
#include <random>

#include "osw/instance.hpp"
#include "osw/oracles.hpp"

namespace osw {

inline constexpr int kEnumerationCap = 20;

// Probability that resource i is active in every element of X and inactive
// in every element of S \ X. Requires X ⊆ S ⊆ N_i and S subfeasible.
Rat gamma(const ElementSet& X, const ElementSet& S, int resource, const Instance& inst);

// F_i(S) = Σ_{X ⊆ S∩N_i} γ(X, S∩N_i) f_i(X), by exact enumeration.
Rat expected_value(int resource, const ElementSet& S, const Instance& inst);
Rat expected_value(int resource, const ElementSet& S, const Instance& inst,
                   const ValueOracle& oracle);

// F_i(e | S) = p_e Σ_{X ⊆ S∩N_i} γ(X, S∩N_i) f_i(e | X). Equals
// expected_value(S ∪ e) − expected_value(S) exactly.
Rat expected_marginal(int resource, int e, const ElementSet& S, const Instance& inst);
Rat expected_marginal(int resource, int e, const ElementSet& S, const Instance& inst,
                      const ValueOracle& oracle);

// Σ_i F_i(e | S) over the resources engaged by e.
Rat welfare_marginal(int e, const ElementSet& S, const Instance& inst);

using Rng = std::mt19937_64;

struct ActivationOutcome {
    int config = -1;
    std::uint32_t active_mask = 0;  // bit k = config's resources[k] active

    std::vector<int> active_resources(const Instance& inst) const;
};

// Draws the realized active subset from the configuration's joint table.
ActivationOutcome sample_outcome(int config, const Instance& inst, Rng& rng);

}  // namespace osw
