#pragma once

#include <vector>

#include "fmtk/enumerate.hpp"
#include "fmtk/metric.hpp"
#include "fmtk/structure.hpp"

namespace fmtk::testutil {

// Path graph 0-1-...-(n-1) over a single symmetric binary relation E.
inline Structure path_graph(int n) {
    std::vector<Elem> universe;
    std::vector<std::vector<Elem>> edges;
    for (int i = 0; i < n; ++i) universe.push_back(i);
    for (int i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1});
        edges.push_back({i + 1, i});
    }
    return Structure(Signature({{"E", 2}}), std::move(universe), {std::move(edges)});
}

inline Structure digraph(int n, std::vector<std::vector<Elem>> edges) {
    std::vector<Elem> universe;
    for (int i = 0; i < n; ++i) universe.push_back(i);
    return Structure(Signature({{"E", 2}}), std::move(universe), {std::move(edges)});
}

inline Structure edgeless(int n) { return digraph(n, {}); }

inline MetricIndex metric3(ExtDistance d01, ExtDistance d02, ExtDistance d12) {
    std::vector<ExtDistance> m(9, ExtDistance::zero());
    m[0 * 3 + 1] = m[1 * 3 + 0] = d01;
    m[0 * 3 + 2] = m[2 * 3 + 0] = d02;
    m[1 * 3 + 2] = m[2 * 3 + 1] = d12;
    return MetricIndex({0, 1, 2}, std::move(m));
}

}  // namespace fmtk::testutil
