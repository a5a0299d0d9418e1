#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmtk/determination.hpp"

namespace fmtk {

// Machine-readable run report. The body printed to stdout is deterministic
// for fixed inputs and seed; wall time goes to stderr only.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // label -> fingerprint digest
    std::uint64_t seed = 0;
    nlohmann::ordered_json budgets = nlohmann::ordered_json::object();
    std::string outcome;  // "pass" | "witness" | "error"
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::vector<DeterminationWitness> witnesses;

    nlohmann::ordered_json to_json() const;
    std::string body() const;  // pretty printed, newline terminated
};

nlohmann::ordered_json witness_json(const DeterminationWitness& w);

}  // namespace fmtk
