#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "osw/greedy.hpp"
#include "osw/lp.hpp"
#include "osw/stochastic.hpp"

namespace osw {

inline constexpr long long kDefaultEnumCap = 10'000'000;
inline constexpr long long kDefaultColumnCap = 1 << 20;

struct OptResult {
    Allocation alloc;
    Rat value{0};
};

// Exhaustive maximization of Σ_i F_i over all allocations (a configuration or
// no action per arrival); returns the lexicographically-least maximizer.
OptResult opt_bruteforce(const Instance& inst, long long cap = kDefaultEnumCap);

// Adaptive policy tree: choose at each arrival, branch on the realized active
// subset of the chosen configuration (single trivial branch for no action).
struct PolicyNode {
    int arrival = 0;
    std::optional<int> choice;
    Rat value{0};
    std::vector<std::pair<std::uint32_t, std::unique_ptr<PolicyNode>>> children;
};

struct AoptResult {
    std::unique_ptr<PolicyNode> policy;
    Rat value{0};
};

// Exact expectimax over arrivals in order; leaf value Σ_i f_i(active_i).
AoptResult aopt_expectimax(const Instance& inst, long long cap = kDefaultEnumCap);

// Plays the policy against sampled activations; returns the realized welfare.
Rat simulate_policy(const Instance& inst, const PolicyNode& root, Rng& rng);

// Concave-closure relaxation: variables y_e and α_i(X) over subfeasible
// X ⊆ N_i; Σ_{e∈N_t} y_e ≤ 1, Σ_X α_i(X) = 1, Σ_{X∋e} α_i(X) ≤ p_e·y_e;
// maximize Σ_i Σ_X α_i(X) f_i(X).
LinearProgram build_optc_lp(const Instance& inst, long long cap = kDefaultColumnCap);

struct ConcaveClosureSolution {
    Rat value{0};
    std::vector<Rat> yc;  // per configuration
    struct BetaEntry {
        ElementSet X;
        Rat mass{0};
    };
    std::vector<ElementSet> O;                 // per resource: {e ∈ N_i : y^c_e > 0}
    std::vector<std::vector<BetaEntry>> beta;  // per resource: positive-mass columns
};

ConcaveClosureSolution solve_optc(const Instance& inst, long long cap = kDefaultColumnCap);

struct DualCertificate {
    std::vector<std::vector<Rat>> lambda;  // [resource][arrival]
    std::vector<Rat> theta;                // [resource]
    Rat zeta{2};
};

// λ_{i,t} = F_i(opt_t | ALG(t)); θ_i = Σ_t Δ_{i,t}; ζ = 2.
DualCertificate build_certificate(const Instance& inst, const GreedyTrace& trace,
                                  const Allocation& opt_alloc);

struct CertificateReport {
    bool holds = false;
    Rat budget_slack{0};               // ζ·ALG − Σλ − Σθ
    std::vector<Rat> coverage_slack;  // per resource: θ_i + Σ_t λ_{i,t} − F_i(OPT)
};

CertificateReport verify_certificate(const Instance& inst, const DualCertificate& cert,
                                     const Rat& greedy_total, const Allocation& opt_alloc);

}  // namespace osw
