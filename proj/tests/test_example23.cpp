#include <doctest.h>

#include "fmtk/example23.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("example 2.3 construction and certificate") {
    TheoryEngine eng;
    Example23 ex = search_example_23(eng, 2, 6);
    const Structure& g = *ex.graph;
    DefinableSet c = ex.c_set();

    // certificate facts, re-checked here
    std::vector<Elem> ta{ex.a}, tb{ex.b};
    Structure b2a = neighborhood(g, ta, 2);
    Structure b2b = neighborhood(g, tb, 2);
    CHECK(eng.thn(b2a, ta, ex.depth) == eng.thn(b2b, tb, ex.depth));
    CHECK(distant_exists_brute(g, ta, c, 1));
    CHECK_FALSE(distant_exists_brute(g, tb, c, 1));
    Structure b3a = neighborhood(g, ta, 3);
    Structure b3b = neighborhood(g, tb, 3);
    CHECK(eng.thn(b3a, ta, ex.depth) != eng.thn(b3b, tb, ex.depth));
    CHECK(g.gaifman(ex.a, ex.c_star) == ExtDistance(3));

    // depth-d types over the full structure differ already at n = 1
    CHECK(eng.thn(g, ta, 1) != eng.thn(g, tb, 1));
}

TEST_CASE("min radius search returns 3 on the example pair") {
    TheoryEngine eng;
    Example23 ex = search_example_23(eng, 2, 6);

    std::vector<LocalityInstance> corpus;
    corpus.push_back({ex.graph, {ex.a}});
    corpus.push_back({ex.graph, {ex.b}});

    // depth pinned by the stated rule: depth(C) + distance_depth(2, ceil(log2 2m)) + lg(a-bar)
    const int depth = 0 + distance_depth(2, 1) + 1;
    MinRadiusResult r = min_radius_search(eng, corpus, 1, depth, 8);
    CHECK(r.k == 3);
    REQUIRE(r.collision_below.has_value());
    CHECK(r.collision_below->value_a != r.collision_below->value_b);
}

TEST_CASE("min radius search basics") {
    TheoryEngine eng;

    // n = 0: radius 1 on any corpus (the search domain starts at 1)
    Signature sig({{"E", 2}, {"P", 1}});
    Structure m1(sig, {0, 1}, {{{0, 1}, {1, 0}}, {{1}}});
    Structure m2(sig, {0, 1}, {{{0, 1}, {1, 0}}, {}});
    std::vector<LocalityInstance> corpus;
    corpus.push_back({make_structure(m1), {0}});
    corpus.push_back({make_structure(m2), {0}});
    MinRadiusResult r0 = min_radius_search(eng, corpus, 0, 2, 8);
    CHECK(r0.k == 1);
    CHECK_FALSE(r0.collision_below.has_value());

    // edgeless corpus: radius 1 as well
    std::vector<LocalityInstance> iso;
    for (int n = 1; n <= 4; ++n) iso.push_back({make_structure(edgeless(n)), {0}});
    MinRadiusResult r1 = min_radius_search(eng, iso, 1, 2, 8);
    CHECK(r1.k == 1);
}

TEST_CASE("subclaim of the radius bound") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DTheoryEngine dt(dsum);
    RadiusSchedule sched = radius_schedule(2);

    std::vector<LocalityInstance> corpus;
    auto graphs = enumerate_graphs("E", 4);
    for (const auto& g : graphs) {
        auto model = make_structure(g);
        for (Elem v : model->universe()) corpus.push_back({model, {v}});
        if (model->size() >= 2)
            corpus.push_back({model, {model->universe()[0], model->universe()[1]}});
    }

    // n = 0 is immediate, n = 1 is the real content
    CHECK(check_subclaim(dt, corpus, sched, 0).functional);
    CHECK(check_subclaim(dt, corpus, sched, 1).functional);

    // serial/parallel agreement
    auto s = check_subclaim(dt, corpus, sched, 1, ExecMode::Serial);
    auto p = check_subclaim(dt, corpus, sched, 1, ExecMode::Parallel);
    CHECK(s.functional == p.functional);
}
