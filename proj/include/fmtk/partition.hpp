#pragma once

#include <span>
#include <vector>

#include "fmtk/metric.hpp"

namespace fmtk {

// Partition into disjoint nonempty blocks covering the input set.
// Canonical form: members sorted within blocks, blocks sorted by least member.
struct Partition {
    std::vector<std::vector<Elem>> blocks;

    std::size_t block_count() const { return blocks.size(); }
    int block_of(Elem e) const;  // -1 if absent

    friend bool operator==(const Partition&, const Partition&) = default;
};

// Minimal partition of J into n-components: the classes of E_J^n, the
// transitive closure of "d <= 2^n within J".
Partition component_partition(std::span<const Elem> j, int n, const MetricIndex& d);

// One-step relation d(s,t) <= 2^n (no closure); exposed for property tests.
bool component_step(Elem s, Elem t, int n, const MetricIndex& d);

// E_J^n itself (with closure within J).
bool component_related(std::span<const Elem> j, Elem s, Elem t, int n, const MetricIndex& d);

// Positions of the tuple grouped by the component partition of its points;
// blocks of positions, canonical by least position.
std::vector<std::vector<int>> tuple_components(std::span<const Elem> tuple, int n,
                                               const MetricIndex& d);

}  // namespace fmtk
