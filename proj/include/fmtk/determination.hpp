#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

namespace fmtk {

// Witness against functionality: two instances with equal source keys and
// distinct target values. Provenance strings make the instances re-checkable.
struct DeterminationWitness {
    std::string key;
    std::string value_a, value_b;
    std::string prov_a, prov_b;
    std::size_t index_a = 0, index_b = 0;
};

struct DeterminationResult {
    bool functional = true;
    std::optional<DeterminationWitness> witness;
};

// Accumulates (key -> value) observations and checks functionality.
// Merging is associative and keeps, per key and value, the least instance
// index, so the reported witness is independent of accumulation order
// (parallel sweeps merge per-thread maps deterministically).
class DeterminationMap {
  public:
    void add(std::string key, std::string value, std::string prov, std::size_t index);
    void merge(const DeterminationMap& other);

    DeterminationResult result() const;
    bool functional() const { return result().functional; }

    std::size_t key_count() const { return entries_.size(); }
    std::size_t instance_count() const { return instances_; }

    struct ValueInfo {
        std::string prov;
        std::size_t index = 0;
        std::size_t count = 0;
    };
    // key -> value -> info (first occurrence and multiplicity)
    const std::map<std::string, std::map<std::string, ValueInfo>>& entries() const {
        return entries_;
    }

    // Lookup of the recorded value; nullptr when the key is absent or ambiguous.
    const std::string* lookup(const std::string& key) const;

  private:
    std::map<std::string, std::map<std::string, ValueInfo>> entries_;
    std::size_t instances_ = 0;
};

struct DeterminationInstance {
    std::string key, value, prov;
};

// Direct form of the spec operation: functionality of a finite relation.
DeterminationResult theory_determines(std::span<const DeterminationInstance> instances);

}  // namespace fmtk
