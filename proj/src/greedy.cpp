#include "osw/greedy.hpp"

#include <algorithm>
#include <set>

namespace osw {

namespace {

// Tie rule: larger marginal, then real beats revealed, then smaller id.
bool better_candidate(const Instance& inst, int a, const Rat& ma, int b, const Rat& mb) {
    if (ma != mb) return ma > mb;
    const auto& ca = inst.config(a);
    const auto& cb = inst.config(b);
    if (ca.revealed != cb.revealed) return !ca.revealed;
    return ca.id < cb.id;
}

GreedyStep make_step(const Instance& inst, int t, const ElementSet& prefix) {
    GreedyStep step;
    step.arrival = t;
    step.prefix = prefix;
    for (int e : inst.menu(t))
        step.candidates.emplace_back(e, welfare_marginal(e, prefix, inst));
    for (const auto& [e, m] : step.candidates)
        if (m > step.max_marginal) step.max_marginal = m;
    return step;
}

void record_choice(const Instance& inst, GreedyStep& step, int chosen) {
    step.chosen = chosen;
    for (int i : inst.config(chosen).resources)
        step.gains.emplace_back(i, expected_marginal(i, chosen, step.prefix, inst));
    Rat achieved(0);
    for (const auto& [i, g] : step.gains) achieved += g;
    step.chosen_marginal = achieved;
}

GreedyResult finalize(const Instance& inst, GreedyTrace trace) {
    GreedyResult result;
    for (const auto& step : trace.steps)
        if (step.chosen) result.alloc.choice[step.arrival] = *step.chosen;
    ElementSet chosen = result.alloc.elements();
    Rat total(0);
    for (std::size_t i = 0; i < inst.resources().size(); ++i)
        total += expected_value(static_cast<int>(i), chosen, inst);
    result.total = std::move(total);
    result.trace = std::move(trace);
    return result;
}

}  // namespace

GreedyResult run_greedy(const Instance& inst) {
    GreedyTrace trace;
    ElementSet prefix;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        GreedyStep step = make_step(inst, t, prefix);
        if (!step.candidates.empty()) {
            int best = step.candidates.front().first;
            Rat best_m = step.candidates.front().second;
            for (const auto& [e, m] : step.candidates)
                if (better_candidate(inst, e, m, best, best_m)) {
                    best = e;
                    best_m = m;
                }
            record_choice(inst, step, best);
            prefix.insert(best);
        }
        trace.steps.push_back(std::move(step));
    }
    return finalize(inst, std::move(trace));
}

GreedyResult run_greedy_eta(const Instance& inst, const Selector& selector, const Rat& eta) {
    if (eta <= 0 || eta > 1) throw ValidationError("eta must lie in (0, 1]");
    GreedyTrace trace;
    ElementSet prefix;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        GreedyStep step = make_step(inst, t, prefix);
        if (!step.candidates.empty()) {
            int pick = selector(step);
            bool in_menu = false;
            Rat pick_marginal(0);
            for (const auto& [e, m] : step.candidates)
                if (e == pick) {
                    in_menu = true;
                    pick_marginal = m;
                }
            if (!in_menu) throw ValidationError("selector returned a configuration outside N_t");
            if (pick_marginal < eta * step.max_marginal)
                throw ValidationError("selector violated its eta guarantee");
            record_choice(inst, step, pick);
            prefix.insert(pick);
        }
        trace.steps.push_back(std::move(step));
    }
    return finalize(inst, std::move(trace));
}

Selector adversarial_selector(Rat eta) {
    return [eta](const GreedyStep& step) {
        int pick = -1;
        Rat pick_m(0);
        for (const auto& [e, m] : step.candidates) {
            if (m < eta * step.max_marginal) continue;
            if (pick < 0 || m < pick_m) {
                pick = e;
                pick_m = m;
            }
        }
        return pick;
    };
}

Selector smallest_id_selector() {
    return [](const GreedyStep& step) {
        return step.candidates.front().first;  // menu order is id order within an arrival
    };
}

AdaptiveSimResult run_adaptive_greedy_sim(const Instance& inst, Rng& rng) {
    for (std::size_t i = 0; i < inst.resources().size(); ++i)
        if (!inst.resources()[i].dummy && inst.objective(static_cast<int>(i)).family() != "coverage")
            throw ValidationError(
                "adaptive greedy simulation requires availability-based (coverage) objectives");

    AdaptiveSimResult result;
    std::set<int> consumed;
    for (int t = 0; t < inst.num_arrivals(); ++t) {
        const auto& menu = inst.menu(t);
        if (menu.empty()) continue;
        int best = -1;
        Rat best_m(0);
        for (int e : menu) {
            Rat m(0);
            for (int i : inst.config(e).resources)
                if (!inst.resources()[static_cast<std::size_t>(i)].dummy && !consumed.count(i))
                    m += inst.p(i, e);
            if (best < 0 || better_candidate(inst, e, m, best, best_m)) {
                best = e;
                best_m = m;
            }
        }
        ActivationOutcome outcome = sample_outcome(best, inst, rng);
        for (int i : outcome.active_resources(inst)) {
            if (inst.resources()[static_cast<std::size_t>(i)].dummy) continue;
            if (consumed.insert(i).second) result.realized += 1;
        }
        result.outcomes.push_back(outcome);
    }
    return result;
}

}  // namespace osw
