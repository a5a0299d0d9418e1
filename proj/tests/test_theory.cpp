#include <doctest.h>

#include "fmtk/ef_game.hpp"
#include "fmtk/enumerate.hpp"
#include "fmtk/theory.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("th0 atomic diagrams") {
    TheoryEngine eng;
    Structure m = digraph(2, {{0, 1}});

    std::vector<Elem> ab{0, 1};
    TypeId t = eng.th0(m, ab);
    const auto& node = eng.table().node(t);
    CHECK(node.depth == 0);
    CHECK(node.t0->params == 2);
    CHECK(node.t0->all_in());
    REQUIRE(node.t0->rels.size() == 1);
    CHECK(node.t0->rels[0].true_tuples == std::vector<std::vector<int>>{{0, 1}});

    // <a,a> identifies both positions
    std::vector<Elem> aa{0, 0};
    const auto& naa = eng.table().node(eng.th0(m, aa));
    CHECK(naa.t0->eq == std::vector<int>{0, 0});

    // entries outside the model get mask 0 and no atoms
    std::vector<Elem> ax{0, 77};
    const auto& nax = eng.table().node(eng.th0(m, ax));
    CHECK(nax.t0->in_mask == 1u);
    CHECK(nax.t0->eq == std::vector<int>{0, -1});
}

TEST_CASE("thn basic facts") {
    TheoryEngine eng;
    std::vector<Elem> empty;

    // two indistinguishable elements: exactly one child at depth 1
    Structure e2 = edgeless(2);
    TypeId t = eng.thn(e2, empty, 1);
    CHECK(eng.table().node(t).children.size() == 1);

    // P4 endpoint vs inner vertex: equal at depths 0 and 1 (each one-point
    // extension realizes the same three atomic types on both sides), separated
    // at depth 2 where the two-distinct-neighbors pattern becomes visible.
    Structure p4 = path_graph(4);
    std::vector<Elem> end{0}, mid{1};
    CHECK(eng.thn(p4, end, 0) == eng.thn(p4, mid, 0));
    CHECK(eng.thn(p4, end, 1) == eng.thn(p4, mid, 1));
    CHECK(eng.thn(p4, end, 2) != eng.thn(p4, mid, 2));
    CHECK(ef_equivalent(p4, end, p4, mid, 1));
    CHECK_FALSE(ef_equivalent(p4, end, p4, mid, 2));

    // depth 0 of thn equals th0
    std::vector<Elem> pair{0, 3};
    CHECK(eng.thn(p4, pair, 0) == eng.th0(p4, pair));

    // types are interned: recomputation gives the same id
    TheoryEngine eng2;
    CHECK(eng.table().digest_of(eng.thn(p4, end, 2)) ==
          eng2.table().digest_of(eng2.thn(p4, end, 2)));
}

TEST_CASE("reduce_depth agrees with recomputation") {
    TheoryEngine eng;
    std::vector<Structure> corpus;
    corpus.push_back(path_graph(4));
    corpus.push_back(edgeless(3));
    corpus.push_back(digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
    corpus.push_back(digraph(2, {{0, 0}, {0, 1}}));

    for (const auto& m : corpus) {
        for (int l = 0; l <= 2; ++l) {
            std::vector<Elem> tuple;
            for (int i = 0; i < l && i < m.size(); ++i) tuple.push_back(m.universe()[i]);
            for (int n = 0; n <= 3; ++n) {
                TypeId tn = eng.thn(m, tuple, n);
                CHECK(eng.reduce_depth(tn, n) == tn);
                for (int k = 0; k <= n; ++k)
                    CHECK(eng.reduce_depth(tn, k) == eng.thn(m, tuple, k));
            }
        }
    }
    CHECK_THROWS_AS(eng.reduce_depth(eng.thn(corpus[0], {}, 1), 2), DomainError);
}

TEST_CASE("reduce_depth on the empty model") {
    TheoryEngine eng;
    Structure empty_model(Signature({{"E", 2}}), {}, {{}});
    std::vector<Elem> outside{5};
    TypeId t1 = eng.thn(empty_model, outside, 2);
    CHECK(eng.table().node(t1).children.empty());
    CHECK(eng.reduce_depth(t1, 0) == eng.th0(empty_model, outside));
}

TEST_CASE("project_params commutes with direct computation") {
    TheoryEngine eng;
    auto p4 = make_structure(path_graph(4));
    for (int n = 0; n <= 2; ++n) {
        for (Elem a : p4->universe())
            for (Elem b : p4->universe()) {
                TypedTuple tt = compute_type(eng, p4, {a, b}, n);
                std::vector<int> keep{1};
                TypedTuple proj = project_type(eng, tt, keep);
                CHECK(proj.id == eng.thn(*p4, std::vector<Elem>{b}, n));
                std::vector<int> all{0, 1};
                CHECK(project_type(eng, tt, all).id == tt.id);
                std::vector<int> none;
                CHECK(project_type(eng, tt, none).id ==
                      eng.thn(*p4, std::vector<Elem>{}, n));
            }
    }
    TypedTuple detached;
    detached.id = eng.thn(*p4, std::vector<Elem>{0}, 1);
    detached.depth = 1;
    std::vector<int> keep{0};
    CHECK_THROWS_AS(project_type(eng, detached, keep), UnsupportedError);
}

TEST_CASE("monotone refinement of type equality") {
    TheoryEngine eng;
    auto structures = enumerate_structures(Signature({{"E", 2}}), 3, true);
    std::vector<std::pair<const Structure*, std::vector<Elem>>> instances;
    for (const auto& m : structures)
        for (Elem a : m.universe()) instances.push_back({&m, {a}});
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t j = i + 1; j < instances.size(); ++j) {
            TypeId ti = eng.thn(*instances[i].first, instances[i].second, 2);
            TypeId tj = eng.thn(*instances[j].first, instances[j].second, 2);
            if (ti == tj) {
                for (int k = 0; k <= 2; ++k)
                    CHECK(eng.reduce_depth(ti, k) == eng.reduce_depth(tj, k));
            }
        }
}

TEST_CASE("external serialization is canonical and parses sizes") {
    TheoryEngine eng;
    Structure p4 = path_graph(4);
    std::vector<Elem> end{0};
    TypeId t = eng.thn(p4, end, 1);
    std::string s1 = eng.table().full_serial(t);
    TheoryEngine eng2;
    std::string s2 = eng2.table().full_serial(eng2.thn(p4, end, 1));
    CHECK(s1 == s2);
    CHECK(s1.substr(0, 2) == "T1");
}
