#include "fmtk/example23.hpp"

namespace fmtk {

namespace {

Structure build_family(int fanout) {
    // 0=a, 1=b, 2=b' (partial peer), 3=b'' (full peer), 4=c*, then the
    // C-crowds Z1, Z2 (cliques seen by a) and W (the crowd hiding c*).
    const Elem a = 0, b = 1, bp = 2, bpp = 3, cstar = 4;
    std::vector<Elem> z1, z2, w;
    Elem next = 5;
    for (int i = 0; i < fanout; ++i) z1.push_back(next++);
    for (int i = 0; i < fanout; ++i) z2.push_back(next++);
    for (int i = 0; i < fanout; ++i) w.push_back(next++);

    std::vector<std::vector<Elem>> edges;
    auto link = [&edges](Elem x, Elem y) {
        edges.push_back({x, y});
        edges.push_back({y, x});
    };
    auto clique = [&](const std::vector<Elem>& grp) {
        for (std::size_t i = 0; i < grp.size(); ++i)
            for (std::size_t j = i + 1; j < grp.size(); ++j) link(grp[i], grp[j]);
    };

    for (Elem z : z1) link(a, z);
    for (Elem z : z2) link(a, z);
    for (Elem z : z1) link(b, z);
    for (Elem z : z2) link(b, z);
    link(b, cstar);
    for (Elem x : w) link(b, x);
    for (Elem z : z1) link(bpp, z);
    for (Elem z : z2) link(bpp, z);
    link(bpp, cstar);
    for (Elem x : w) link(bpp, x);
    for (Elem z : z1) link(bp, z);
    clique(z1);
    clique(z2);
    clique(w);
    for (Elem x : w) link(cstar, x);

    std::vector<std::vector<Elem>> marks;
    marks.push_back({cstar});
    for (Elem z : z1) marks.push_back({z});
    for (Elem z : z2) marks.push_back({z});
    for (Elem x : w) marks.push_back({x});

    std::vector<Elem> universe;
    for (Elem e = 0; e < next; ++e) universe.push_back(e);
    Signature sig({{"E", 2}, {"C", 1}});
    std::vector<std::vector<std::vector<Elem>>> interp(2);
    interp[static_cast<std::size_t>(sig.index_of("E"))] = std::move(edges);
    interp[static_cast<std::size_t>(sig.index_of("C"))] = std::move(marks);
    return Structure(sig, std::move(universe), std::move(interp));
}

}  // namespace

Example23 build_example_23(TheoryEngine& eng, int fanout, int depth) {
    if (fanout < 2) throw DomainError("example 2.3: fanout must be >= 2");
    if (depth < 1) throw DomainError("example 2.3: depth must be >= 1");

    Example23 ex;
    ex.fanout = fanout;
    ex.depth = depth;
    ex.graph = make_structure(build_family(fanout));
    const Structure& g = *ex.graph;
    DefinableSet c = ex.c_set();

    // Structural shape of the example.
    if (g.gaifman(ex.a, ex.c_star) != ExtDistance(3))
        throw DomainError("example 2.3: d(a,c*) != 3");
    for (Elem e : c.extension(g)) {
        if (!(g.gaifman(ex.b, e) <= 1)) throw DomainError("example 2.3: d(b,C) > 1");
        for (Elem f : c.extension(g))
            if (!(g.gaifman(e, f) <= 2)) throw DomainError("example 2.3: C-diameter > 2");
    }

    std::vector<Elem> ta{ex.a}, tb{ex.b};

    // (2) the distant-element answers differ at m=1
    if (!distant_exists_brute(g, ta, c, 1) || distant_exists_brute(g, tb, c, 1))
        throw DomainError("example 2.3: distant-element answers do not differ at m=1");

    // (1) radius-2 indistinguishability at the requested depth
    for (int d = 1; d <= depth; ++d) {
        Structure ball_a = neighborhood(g, ta, 2);
        Structure ball_b = neighborhood(g, tb, 2);
        if (eng.thn(ball_a, ta, d) != eng.thn(ball_b, tb, d))
            throw DomainError("example 2.3: fanout " + std::to_string(fanout) +
                              " too small, radius-2 theories differ at depth " +
                              std::to_string(d));
    }

    // (3) radius 3 separates
    Structure ball3_a = neighborhood(g, ta, 3);
    Structure ball3_b = neighborhood(g, tb, 3);
    if (eng.thn(ball3_a, ta, depth) == eng.thn(ball3_b, tb, depth))
        throw DomainError("example 2.3: radius-3 theories do not separate at depth " +
                          std::to_string(depth));

    return ex;
}

Example23 search_example_23(TheoryEngine& eng, int depth, int max_fanout) {
    std::string last;
    for (int f = 2; f <= max_fanout; ++f) {
        try {
            return build_example_23(eng, f, depth);
        } catch (const DomainError& e) {
            last = e.what();
        }
    }
    throw DomainError("example 2.3: no adequate fanout up to " + std::to_string(max_fanout) +
                      " (" + last + ")");
}

}  // namespace fmtk
