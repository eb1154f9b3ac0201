#pragma once

#include <string>
#include <vector>

#include "osw/benchmarks.hpp"

namespace osw {

// The deterministic companion instance: every arrival's menu gains one
// revealed configuration ĥe_t engaging R̂_t = {i : O_i ∩ N_t ≠ ∅} (plus a
// fresh dummy resource when R̂_t is empty or duplicates an existing menu
// entry), activation is removed, and each objective becomes
// g_i(S) = Σ_{X⊆S∩N_i} γ(X, S∩N_i) · f̂_i((S∩N̂) ∪ X), where f̂_i spreads the
// revealed part over the β_i distribution of the concave-closure solution.
struct RevealedInstance {
    Instance base;
    Instance hat;
    ConcaveClosureSolution sol;
    std::vector<int> reveal_config;  // per arrival: index of ĥe_t in hat
    std::vector<int> base_index;     // hat config -> base config, -1 for ĥe_t
    std::vector<int> hat_index;      // base config -> hat config
};

RevealedInstance build_reveal(const Instance& base, const ConcaveClosureSolution& sol);

// g_i(S) for S given in hat-instance config indices.
Rat g_value(const RevealedInstance& rev, int resource, const ElementSet& S);

struct RevealReport {
    bool holds = false;
    bool greedy_value_equal = false;  // ALG(Ĝ) = ALG(G)
    bool greedy_real_only = false;    // the Ĝ trace never selects a revealed config
    bool opt_dominates = false;       // OPT(Ĝ) ≥ value of the relaxation on G
    bool per_step_dominance = false;  // Σ_i g_i(ĥe_t | S*_t) ≤ chosen marginal at every t
    bool value_identities = false;    // Σ_i g_i(N̂) equals the relaxation value; g = F on N
    bool monotone_so_ok = false;      // every g_i monotone and submodular-order checked
    bool submodular_preserved = true; // g_i submodular whenever every f_i is
    std::string note;
};

RevealReport verify_reveal(const RevealedInstance& rev, long long cap = kDefaultEnumCap);

}  // namespace osw
