#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osw/uiid.hpp"

namespace osw {

// Strict JSON schema: unknown fields are rejected, probabilities and values
// are exact rational strings ("0.5", "1/2", "3").
InstanceData parse_instance_data(const std::string& text);
Instance parse_instance(const std::string& text);
std::string serialize_instance_data(const InstanceData& data);
std::string serialize_instance(const Instance& inst);

TypeDistribution parse_distribution(const std::string& text);
std::string serialize_distribution(const TypeDistribution& dist);

// One line of the experiment CSV. Optional stages are serialized empty.
struct ExperimentRow {
    std::string instance_id;
    std::string family;
    std::optional<Rat> alg;
    std::optional<Rat> opt;
    std::optional<Rat> aopt;
    std::optional<Rat> optc;
    std::optional<Rat> ratio_alg_optc;
    bool cert_ok = true;
    bool checks_ok = true;
};

// Header: instance_id,family,ALG,OPT,AOPT,OPTC,ratio_alg_optc,cert_ok,checks_ok
std::string report_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_report_csv(const std::string& text);

// Greedy trace export: arrival,chosen,chosen_marginal,max_marginal.
std::string trace_csv(const Instance& inst, const GreedyTrace& trace);

// Per-trial (ALG, OPT^c) pairs of a ratio estimate.
std::string uiid_csv(const RatioEstimate& est);

}  // namespace osw
