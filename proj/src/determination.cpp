#include "fmtk/determination.hpp"

#include <limits>

namespace fmtk {

void DeterminationMap::add(std::string key, std::string value, std::string prov,
                           std::size_t index) {
    ++instances_;
    auto& values = entries_[std::move(key)];
    auto it = values.find(value);
    if (it == values.end()) {
        values.emplace(std::move(value), ValueInfo{std::move(prov), index, 1});
    } else {
        ++it->second.count;
        if (index < it->second.index) {
            it->second.index = index;
            it->second.prov = std::move(prov);
        }
    }
}

void DeterminationMap::merge(const DeterminationMap& other) {
    instances_ += other.instances_;
    for (const auto& [key, values] : other.entries_) {
        auto& mine = entries_[key];
        for (const auto& [value, info] : values) {
            auto it = mine.find(value);
            if (it == mine.end()) {
                mine.emplace(value, info);
            } else {
                it->second.count += info.count;
                if (info.index < it->second.index) {
                    it->second.index = info.index;
                    it->second.prov = info.prov;
                }
            }
        }
    }
}

DeterminationResult DeterminationMap::result() const {
    // Witness choice: among all keys with >= 2 values, pick the one whose
    // second-earliest value occurrence is least, i.e. the earliest instance
    // that actually conflicts with a prior one.
    DeterminationResult out;
    std::size_t best_second = std::numeric_limits<std::size_t>::max();
    for (const auto& [key, values] : entries_) {
        if (values.size() < 2) continue;
        const ValueInfo* first = nullptr;
        const ValueInfo* second = nullptr;
        const std::string* first_val = nullptr;
        const std::string* second_val = nullptr;
        for (const auto& [value, info] : values) {
            if (!first || info.index < first->index) {
                second = first;
                second_val = first_val;
                first = &info;
                first_val = &value;
            } else if (!second || info.index < second->index) {
                second = &info;
                second_val = &value;
            }
        }
        if (second->index < best_second) {
            best_second = second->index;
            out.witness = DeterminationWitness{key,          *first_val,    *second_val,
                                               first->prov,  second->prov,  first->index,
                                               second->index};
        }
    }
    out.functional = !out.witness.has_value();
    return out;
}

const std::string* DeterminationMap::lookup(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end() || it->second.size() != 1) return nullptr;
    return &it->second.begin()->first;
}

DeterminationResult theory_determines(std::span<const DeterminationInstance> instances) {
    DeterminationMap map;
    for (std::size_t i = 0; i < instances.size(); ++i)
        map.add(instances[i].key, instances[i].value, instances[i].prov, i);
    return map.result();
}

}  // namespace fmtk
