#include <doctest.h>

#include "fmtk/determination.hpp"
#include "fmtk/ef_game.hpp"
#include "fmtk/enumerate.hpp"
#include "fmtk/theory.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("ef identity and counting") {
    Structure p4 = path_graph(4);
    std::vector<Elem> a{0};
    CHECK(ef_equivalent(p4, a, p4, a, 3));

    // pure-equality structures of different small cardinality separate at
    // depth max-size
    Signature empty_sig({{"P", 1}});
    Structure one(empty_sig, {0}, {{}});
    Structure two(empty_sig, {0, 1}, {{}});
    std::vector<Elem> none;
    CHECK(ef_equivalent(one, none, two, none, 1));
    CHECK_FALSE(ef_equivalent(one, none, two, none, 2));
}

TEST_CASE("ef agrees with type equality on small corpus") {
    TheoryEngine eng;
    auto structures = enumerate_structures(Signature({{"E", 2}}), 2, false);
    struct Inst {
        const Structure* m;
        std::vector<Elem> tuple;
    };
    std::vector<Inst> instances;
    for (const auto& m : structures) {
        instances.push_back({&m, {}});
        for (Elem a : m.universe()) {
            instances.push_back({&m, {a}});
            for (Elem b : m.universe()) instances.push_back({&m, {a, b}});
        }
    }
    EfMemo memo;
    for (int n = 0; n <= 2; ++n)
        for (const auto& x : instances)
            for (const auto& y : instances) {
                if (x.tuple.size() != y.tuple.size()) continue;
                bool types = eng.thn(*x.m, x.tuple, n) == eng.thn(*y.m, y.tuple, n);
                bool game = ef_equivalent(*x.m, x.tuple, *y.m, y.tuple, n, &memo);
                REQUIRE(types == game);
            }
}

TEST_CASE("ef is an equivalence relation on random instances") {
    Rng rng(11);
    std::vector<Structure> pool;
    for (int i = 0; i < 8; ++i) pool.push_back(random_graph(3 + static_cast<int>(rng() % 2), 0.5, rng));
    EfMemo memo;
    for (int trial = 0; trial < 60; ++trial) {
        const Structure& a = pool[rng() % pool.size()];
        const Structure& b = pool[rng() % pool.size()];
        const Structure& c = pool[rng() % pool.size()];
        std::vector<Elem> ta{a.universe()[rng() % a.universe().size()]};
        std::vector<Elem> tb{b.universe()[rng() % b.universe().size()]};
        std::vector<Elem> tc{c.universe()[rng() % c.universe().size()]};
        int n = static_cast<int>(rng() % 3);
        CHECK(ef_equivalent(a, ta, a, ta, n, &memo));
        CHECK(ef_equivalent(a, ta, b, tb, n, &memo) == ef_equivalent(b, tb, a, ta, n, &memo));
        if (ef_equivalent(a, ta, b, tb, n, &memo) && ef_equivalent(b, tb, c, tc, n, &memo))
            CHECK(ef_equivalent(a, ta, c, tc, n, &memo));
    }
}

TEST_CASE("determination checker") {
    std::vector<DeterminationInstance> empty;
    CHECK(theory_determines(empty).functional);

    std::vector<DeterminationInstance> dup{{"k", "v", "i0"}, {"k", "v", "i1"}};
    CHECK(theory_determines(dup).functional);

    std::vector<DeterminationInstance> bad{{"a", "1", "i0"}, {"k", "v", "i1"},
                                           {"k", "w", "i2"}, {"k", "z", "i3"}};
    auto r = theory_determines(bad);
    REQUIRE_FALSE(r.functional);
    CHECK(r.witness->key == "k");
    CHECK(r.witness->value_a == "v");
    CHECK(r.witness->value_b == "w");  // earliest conflicting pair
    CHECK(r.witness->index_b == 2);

    // merge associativity / order independence
    DeterminationMap m1, m2;
    m1.add("k", "v", "i1", 1);
    m2.add("k", "w", "i2", 2);
    m2.add("a", "1", "i0", 0);
    m2.add("k", "z", "i3", 3);
    DeterminationMap merged;
    merged.merge(m2);
    merged.merge(m1);
    auto r2 = merged.result();
    REQUIRE_FALSE(r2.functional);
    CHECK(r2.witness->value_a == r.witness->value_a);
    CHECK(r2.witness->value_b == r.witness->value_b);
    CHECK(r2.witness->index_b == r.witness->index_b);
}

TEST_CASE("enumeration counts") {
    // one unary predicate, size 1: holds or not
    CHECK(enumerate_structures(Signature({{"P", 1}}), 1).size() == 2);
    // one binary relation, size 1: loop or not
    CHECK(enumerate_structures(Signature({{"E", 2}}), 1).size() == 2);
    // digraphs with loops on <= 2 vertices up to isomorphism:
    // hand enumeration gives 2 + 10
    auto upto2 = enumerate_structures(Signature({{"E", 2}}), 2, true);
    CHECK(upto2.size() == 12);
    // all labeled: 2 + 2^4
    CHECK(enumerate_structures(Signature({{"E", 2}}), 2, false).size() == 18);
    // undirected simple graphs up to iso: 1,2,4,11 cumulative 18
    CHECK(enumerate_graphs("E", 4).size() == 18);
}
