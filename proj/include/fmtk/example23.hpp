#pragma once

#include "fmtk/locality.hpp"

namespace fmtk {

// Finite truncation of the two-vertex locality lower-bound example: a graph
// with a C-crowd where a and b have equal depth-d radius-2 theories but only
// a has a C-element at distance > 1. The adequacy of the truncation is
// checked at construction, never assumed.
struct Example23 {
    StructurePtr graph;  // signature {E:2 symmetric, C:1}
    Elem a = 0, b = 1, c_star = 4;
    int fanout = 2;
    int depth = 2;

    DefinableSet c_set() const { return DefinableSet::predicate("C"); }
};

// Builds the family at the given fanout and verifies the certificate:
//   (1) th^depth(V^2(a);a) == th^depth(V^2(b);b)
//   (2) distant-element answers at m=1 differ (true at a, false at b)
//   (3) th^depth(V^3(a);a) != th^depth(V^3(b);b)
// plus the structural shape (d(a,c*)=3, d(b,C) <= 1, C-diameter <= 2).
// Throws DomainError naming the failing depth/fact when fanout is too small.
Example23 build_example_23(TheoryEngine& eng, int fanout, int depth = 2);

// Least adequate fanout in [2, max_fanout].
Example23 search_example_23(TheoryEngine& eng, int depth = 2, int max_fanout = 6);

}  // namespace fmtk
