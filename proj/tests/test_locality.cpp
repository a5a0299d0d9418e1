#include <doctest.h>

#include "fmtk/example23.hpp"
#include "fmtk/locality.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("as_distorted_sum") {
    TheoryEngine eng;
    Structure p4 = path_graph(4);
    DistortedSumSpec spec = as_distorted_sum(p4);
    CHECK(spec.h(1) == 1);
    CHECK(spec.block(2) == std::vector<Elem>{2});
    CHECK(verify_distorted_sum(eng, spec, 2).ok);

    Structure iso = edgeless(3);
    DistortedSumSpec spec2 = as_distorted_sum(iso);
    CHECK(spec2.metric().dist(0, 2).is_infinite());
    CHECK(spec2.window_elements(1) == std::vector<Elem>{1});
}

TEST_CASE("distance depth and formulas") {
    CHECK(distance_depth(2, 0) == 0);
    CHECK(distance_depth(2, 3) == 3);
    CHECK(distance_depth(3, 1) == 2);
    CHECK_THROWS_AS(distance_depth(1, 0), DomainError);

    Signature sig({{"E", 2}});
    CHECK(distance_formula(sig, 1, DistCmp::LessEq)->depth() == 0);
    CHECK(distance_formula(sig, 4, DistCmp::LessEq)->depth() == 2);
    CHECK(distance_formula(sig, 4, DistCmp::Greater)->depth() == 2);
    CHECK_THROWS_AS(distance_formula(sig, 3, DistCmp::LessEq), DomainError);

    // agreement with BFS distances on random graphs
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        Structure g = random_graph(2 + static_cast<int>(rng() % 7), 0.35, rng);
        for (std::uint64_t th : {1ull, 2ull, 4ull}) {
            FormulaPtr le = distance_formula(g.sig(), th, DistCmp::LessEq);
            FormulaPtr gt = distance_formula(g.sig(), th, DistCmp::Greater);
            for (Elem x : g.universe())
                for (Elem y : g.universe()) {
                    std::vector<Elem> t{x, y};
                    CHECK(eval_formula(g, *le, t) == (g.gaifman(x, y) <= th));
                    CHECK(eval_formula(g, *gt, t) == (g.gaifman(x, y) > th));
                }
        }
        // general thresholds, non powers of two
        for (std::uint64_t th : {3ull, 5ull, 6ull}) {
            FormulaPtr le = distance_le_general(g.sig(), th, 0, 1, 2);
            for (Elem x : g.universe())
                for (Elem y : g.universe()) {
                    std::vector<Elem> t{x, y};
                    CHECK(eval_formula(g, *le, t) == (g.gaifman(x, y) <= th));
                }
        }
    }
}

TEST_CASE("scattered search") {
    DefinableSet all = DefinableSet::formula(Formula::eq(0, 0));
    Structure iso = edgeless(5);
    CHECK(scattered_max(iso, all, 1, 3) == 3);  // cap saturation
    CHECK(scattered_max(iso, all, 1, 10) == 5);

    // clique: all pairwise distances 1 <= 2m
    Structure k4(Signature({{"E", 2}}), {0, 1, 2, 3}, {{}});
    std::vector<std::vector<Elem>> edges;
    for (Elem i = 0; i < 4; ++i)
        for (Elem j = 0; j < 4; ++j)
            if (i != j) edges.push_back({i, j});
    Structure clique(Signature({{"E", 2}}), {0, 1, 2, 3}, {std::move(edges)});
    CHECK(scattered_max(clique, all, 1, 4) == 1);

    DefinableSet none = DefinableSet::formula(Formula::negation(Formula::eq(0, 0)));
    CHECK(scattered_max(iso, none, 1, 4) == 0);
}

TEST_CASE("distant element procedure agrees with brute force") {
    Rng rng(31);
    DefinableSet c = DefinableSet::predicate("C");
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Structure g = random_graph_with_unary(3 + static_cast<int>(rng() % 8), 0.3, 0.4, rng);
        for (std::uint64_t m : {1ull, 2ull}) {
            int cap_len = 2;
            for (int len = 0; len <= cap_len; ++len) {
                // a few random tuples per length
                for (int rep = 0; rep < 3; ++rep) {
                    std::vector<Elem> tuple;
                    for (int i = 0; i < len; ++i)
                        tuple.push_back(
                            g.universe()[rng() % static_cast<std::uint64_t>(g.size())]);
                    int gsm = scattered_max(g, c, m, len + 1);
                    Structure ball = neighborhood(g, tuple, 3 * m);
                    bool local = distant_exists_local(ball, tuple, c, m, len, gsm);
                    bool brute = distant_exists_brute(g, tuple, c, m);
                    REQUIRE(local == brute);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("merge_local equals direct computation") {
    TheoryEngine eng;
    Rng rng(41);
    int near_cases = 0, far_cases = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Structure g = random_graph(3 + static_cast<int>(rng() % 6), 0.25, rng);
        for (std::uint64_t m : {1ull, 2ull}) {
            std::vector<Elem> tuple{g.universe()[rng() % static_cast<std::uint64_t>(g.size())]};
            Elem b = g.universe()[rng() % static_cast<std::uint64_t>(g.size())];
            ExtDistance d = g.gaifman(tuple[0], b);
            (d <= 2 * m + 1 ? near_cases : far_cases)++;

            std::vector<Elem> ext = tuple;
            ext.push_back(b);
            Structure direct_ball = neighborhood(g, ext, m);
            TypeId direct = eng.thn(direct_ball, ext, 1);
            CHECK(merge_local(eng, g, tuple, b, 1, m) == direct);
        }
    }
    CHECK(near_cases > 0);
    CHECK(far_cases > 0);

    // b in a-bar forces the near case
    Structure p4 = path_graph(4);
    std::vector<Elem> t{0};
    std::vector<Elem> ext{0, 0};
    CHECK(merge_local(eng, p4, t, 0, 1, 1) == eng.thn(neighborhood(p4, ext, 1), ext, 1));
}

TEST_CASE("gaifman parameter tables") {
    GaifmanParams gi = gaifman_params(2, 1, GaifmanVariant::Improved);
    CHECK(gi.r == 12);
    CHECK(gi.s == 3);
    CHECK(gi.t == 12);
    GaifmanParams gc = gaifman_params(2, 1, GaifmanVariant::Classical);
    CHECK(gc.r == 7);
    CHECK(gc.s == 3);
    CHECK(gc.t == 24);
    CHECK(gaifman_params(1, 0, GaifmanVariant::Improved).r == 3);
    CHECK(gaifman_params(1, 0, GaifmanVariant::Classical).r == 1);
    for (int n = 3; n <= 6; ++n)
        CHECK(gaifman_params(n, 0, GaifmanVariant::Improved).r <
              gaifman_params(n, 0, GaifmanVariant::Classical).r);
    CHECK_THROWS_AS(gaifman_params(0, 1, GaifmanVariant::Improved), DomainError);
}

TEST_CASE("basic local sentences") {
    // psi = "x0 is in C", radius 1, two far witnesses
    Signature sig({{"E", 2}, {"C", 1}});
    BasicLocalSentence s;
    s.count = 2;
    s.radius = 1;
    s.psi = Formula::rel("C", {0});

    auto graph_with_c = [&sig](std::vector<Elem> universe,
                               std::vector<std::vector<Elem>> edges,
                               std::vector<std::vector<Elem>> marks) {
        std::vector<std::vector<std::vector<Elem>>> interp(2);
        interp[static_cast<std::size_t>(sig.index_of("E"))] = std::move(edges);
        interp[static_cast<std::size_t>(sig.index_of("C"))] = std::move(marks);
        return Structure(sig, std::move(universe), std::move(interp));
    };

    // two far C-vertices: 0-1 edge, 4 isolated; C = {0, 4}
    Structure g = graph_with_c({0, 1, 4}, {{0, 1}, {1, 0}}, {{0}, {4}});
    CHECK(eval_basic_local(g, s));

    // all C within distance 2: fails
    Structure near =
        graph_with_c({0, 1, 2}, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}, {{0}, {2}});
    CHECK_FALSE(eval_basic_local(near, s));

    // psi true, edgeless graph with >= s vertices
    BasicLocalSentence taut;
    taut.count = 3;
    taut.radius = 1;
    taut.psi = Formula::eq(0, 0);
    CHECK(eval_basic_local(edgeless(3), taut));
    CHECK_FALSE(eval_basic_local(edgeless(2), taut));

    // agreement with the expanded unrelativized sentence on random graphs
    Rng rng(53);
    BasicLocalSentence loc;
    loc.count = 2;
    loc.radius = 1;
    // psi(x0) = exists y in V^1(x0): C(y)
    loc.psi = Formula::exists(1, Formula::rel("C", {1}), 1);
    for (int trial = 0; trial < 25; ++trial) {
        Structure h = random_graph_with_unary(2 + static_cast<int>(rng() % 5), 0.4, 0.5, rng);
        FormulaPtr expanded = expand_basic_local(h.sig(), loc);
        std::vector<Elem> empty;
        CHECK(eval_basic_local(h, loc) == eval_formula(h, *expanded, empty));
    }
}
