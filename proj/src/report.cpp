#include "fmtk/report.hpp"

namespace fmtk {

nlohmann::ordered_json witness_json(const DeterminationWitness& w) {
    nlohmann::ordered_json j;
    j["key"] = w.key;
    j["value_a"] = w.value_a;
    j["value_b"] = w.value_b;
    j["instance_a"] = w.prov_a;
    j["instance_b"] = w.prov_b;
    j["index_a"] = w.index_a;
    j["index_b"] = w.index_b;
    return j;
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    nlohmann::ordered_json ins = nlohmann::ordered_json::object();
    for (const auto& [label, fp] : inputs) ins[label] = fp;
    j["inputs"] = ins;
    j["seed"] = seed;
    j["budgets"] = budgets;
    j["outcome"] = outcome;
    j["details"] = details;
    nlohmann::ordered_json ws = nlohmann::ordered_json::array();
    for (const auto& w : witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    return j;
}

std::string RunReport::body() const { return to_json().dump(2) + "\n"; }

}  // namespace fmtk
