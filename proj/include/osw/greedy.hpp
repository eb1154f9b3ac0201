#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "osw/stochastic.hpp"

namespace osw {

struct GreedyStep {
    int arrival = 0;
    ElementSet prefix;                            // ALG(t) before the choice
    std::vector<std::pair<int, Rat>> candidates;  // (config, Σ_i F_i(e | ALG(t)))
    std::optional<int> chosen;
    Rat chosen_marginal{0};
    Rat max_marginal{0};
    std::vector<std::pair<int, Rat>> gains;  // (resource, Δ_{i,t}), engaged resources only
};

struct GreedyTrace {
    std::vector<GreedyStep> steps;
};

struct GreedyResult {
    Allocation alloc;
    Rat total{0};
    GreedyTrace trace;
};

// Non-adaptive Greedy: at each arrival picks argmax_{e ∈ N_t} Σ_i F_i(e | ALG(t)).
// Ties: real (non-revealed) beats revealed, then smallest configuration id.
GreedyResult run_greedy(const Instance& inst);

// Chooses among a step's candidates; must return one of the candidate configs.
using Selector = std::function<int(const GreedyStep&)>;

// η-approximate Greedy: the selector's pick must reach at least η times the
// best candidate marginal; the trace records both achieved and maximum.
GreedyResult run_greedy_eta(const Instance& inst, const Selector& selector, const Rat& eta);

// Worst candidate still meeting the η guarantee.
Selector adversarial_selector(Rat eta);
// Always the smallest-id candidate.
Selector smallest_id_selector();

struct AdaptiveSimResult {
    Rat realized{0};
    std::vector<ActivationOutcome> outcomes;
};

// Simulation-only adaptive Greedy for availability-based (coverage) families:
// maximizes marginal over still-available resources, then observes activation.
AdaptiveSimResult run_adaptive_greedy_sim(const Instance& inst, Rng& rng);

}  // namespace osw
