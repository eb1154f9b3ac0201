#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osw/io.hpp"
#include "osw/reveal.hpp"

namespace osw {

// Families: obm, stochastic-rewards, assortment-mnl, patience, reusable,
// wholepage, random-explicit. Probabilities are drawn from a small rational
// grid so every downstream computation stays exact.
struct GeneratorSpec {
    std::string family = "stochastic-rewards";
    int resources = 2;   // |I| (real resources)
    int arrivals = 3;    // T
    int menu_max = 3;    // |N_t| ≤ menu_max
    int patience = 2;    // deterministic patience k (patience family)
    bool allow_p_one_only = false;  // deterministic activation (obm-style)
    std::string fixture;            // "sr-ex" / "reuse-ex" returns the canonical fixture
    std::uint64_t seed = 0;
};

Instance gen(const GeneratorSpec& spec);

// MNL choice over an offered set: outcome {i} w.p. v_i / (v_0 + Σ_j v_j),
// nothing otherwise.
ActivationSpec mnl_activation(const std::vector<std::pair<std::string, Rat>>& offered,
                              const Rat& v0);

struct StageSet {
    bool greedy = true;
    bool opt = true;
    bool aopt = true;
    bool optc = true;
    bool certificate = true;
    bool reveal = false;
    bool properties = true;
};

struct ExperimentReport {
    ExperimentRow row;
    bool chain_ok = true;  // ALG ≥ OPT^c/2 and OPT ≤ AOPT ≤ OPT^c (run stages only)
    bool reveal_ok = true;
    std::string note;
};

ExperimentReport run_experiment(const Instance& inst, const StageSet& stages,
                                const std::string& family = "file",
                                long long cap = kDefaultEnumCap);

struct FuzzReport {
    long long trials = 0;
    long long violations = 0;
    std::vector<ExperimentRow> rows;
    std::vector<std::string> repro_files;
    std::string note;
};

// Generates `trials` random instances, runs the full pipeline on each and
// asserts the invariant chain; violating instances are persisted as repro
// files under repro_dir (empty string disables persistence).
FuzzReport fuzz(const GeneratorSpec& spec, long long trials, std::uint64_t seed,
                const std::string& repro_dir = "", bool with_reveal = false);

}  // namespace osw
