#include <doctest.h>

#include "fmtk/corpus.hpp"
#include "fmtk/expansion.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("alpha recursion and closed form") {
    for (int l = 0; l <= 5; ++l) CHECK(alpha(0, l) == 0);
    CHECK(alpha(1, 0) == 2);
    CHECK(alpha(2, 0) == 5);
    CHECK(alpha(3, 0) == 9);
    for (int n = 0; n <= 10; ++n)
        for (int l = 0; l <= 10; ++l) {
            std::uint64_t closed = static_cast<std::uint64_t>(n) * l +
                                   static_cast<std::uint64_t>(n) * (n + 3) / 2;
            CHECK(alpha(n, l) == closed);
        }
    for (int n = 1; n <= 10; ++n)
        for (int l = 0; l <= 10; ++l) CHECK(alpha(n, l) > alpha(n - 1, l + 1));
}

TEST_CASE("local models and windows") {
    DistortedSumSpec fx = disjoint_sum_fixture();
    // isolated blocks: window of 0 is its own block
    CHECK(fx.window_elements(0) == std::vector<Elem>{100, 101});
    CHECK(fx.window_elements(1) == std::vector<Elem>{102});
    Structure m0 = fx.local_model(0);
    CHECK(m0.size() == 2);
    CHECK(m0.tuples(0).size() == 2);

    // |I| = 1: the whole global structure
    Structure g = path_graph(3);
    DistortedSumSpec single = single_point_fixture(g);
    CHECK(single.local_model(single.index().universe()[0]).fingerprint() == g.fingerprint());
}

TEST_CASE("verify_distorted_sum accepts sums and rejects the far edge") {
    TheoryEngine eng;
    // |I|=1: M is a distorted sum of itself
    DistortedSumSpec trivial = single_point_fixture(path_graph(3));
    auto r1 = verify_distorted_sum(eng, trivial, 2);
    CHECK(r1.ok);

    // direct sums are distorted sums
    auto r2 = verify_distorted_sum(eng, disjoint_sum_fixture(), 2);
    CHECK(r2.ok);

    // one directed far edge collides on the swapped pair
    auto r3 = verify_distorted_sum(eng, violating_fixture(), 2);
    REQUIRE_FALSE(r3.ok);
    CHECK(r3.witness->value_a != r3.witness->value_b);
    CHECK(r3.witness->key.substr(0, 3) == "K0(");

    // the otherwise-identical spec without the edge passes
    DistortedSumSpec fixed(violating_fixture().index(), violating_fixture().metric(),
                           Structure(Signature({{"E", 2}}), {100, 101}, {{}}), {0, 1});
    CHECK(verify_distorted_sum(eng, fixed, 2).ok);
}

TEST_CASE("neighborhood models") {
    DistortedSumSpec fx = disjoint_sum_fixture();
    // radius 1 around a global element of block 0: I-part {0}, M-part {100,101}
    std::vector<Elem> a{100};
    Structure nb = neighborhood_model(fx, a, 1);
    CHECK(nb.universe() == std::vector<Elem>{0, 100, 101});
    int in_i = nb.sig().index_of("in_I");
    int in_m = nb.sig().index_of("in_M");
    CHECK(nb.tuples(in_i).size() == 1);
    CHECK(nb.tuples(in_m).size() == 2);
    int h_sym = nb.sig().index_of("H");
    CHECK(nb.tuples(h_sym).size() == 2);
    REQUIRE(nb.dist_annotation().has_value());
    CHECK(nb.dist_annotation()->bound == 1);

    // reading through h: the model of a tuple equals the model of its h-image.
    std::vector<Elem> hs{0};
    CHECK(neighborhood_model(fx, hs, 1).fingerprint() == nb.fingerprint());

    // growing radius saturates at the metric component
    std::vector<Elem> big = neighborhood_model(fx, a, 100).universe();
    CHECK(big == std::vector<Elem>{0, 100, 101});
}

TEST_CASE("index expansion levels") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DistortedSumSpec fx = disjoint_sum_fixture();

    // n = 0: the bare index
    StructurePtr e0 = dsum.index_expansion(fx, 0, 2);
    CHECK(e0->fingerprint() == fx.index().fingerprint());

    // n = 1: families R1,k,l for k <= l, plus distances up to 2
    StructurePtr e1 = dsum.index_expansion(fx, 1, 1);
    REQUIRE(e1->dist_annotation().has_value());
    CHECK(e1->dist_annotation()->bound == 2);
    bool found = false;
    for (const auto& f : e1->families())
        if (f.name == "R1,0,1") found = true;
    CHECK(found);

    // single-point index: R^t at k=0 marks the theory of the point
    DistortedSumSpec single = single_point_fixture(path_graph(2));
    StructurePtr s1 = dsum.index_expansion(single, 1, 0);
    REQUIRE(s1->families().size() == 1);
    CHECK(s1->families()[0].name == "R1,0,0");
    CHECK(s1->families()[0].held.size() == 1);

    // realized predicate sets are invariant under relabeling of the global
    Structure relabeled(Signature({{"E", 2}}), {200, 201},
                        {{{200, 201}, {201, 200}}});
    DistortedSumSpec single2 = single_point_fixture(relabeled);
    StructurePtr s2 = dsum.index_expansion(single2, 1, 0);
    REQUIRE(s2->families().size() == 1);
    auto digs1 = s1->families()[0].held.begin()->second;
    auto digs2 = s2->families()[0].held.begin()->second;
    CHECK(digs1 == digs2);
}

TEST_CASE("distorted sum lemma on a small corpus") {
    TheoryEngine eng;
    DsumEngine dsum(eng);

    DsumCorpusBudget budget;
    budget.max_index = 2;
    budget.max_block = 1;
    budget.max_global = 2;
    budget.palette = {1, 2};
    budget.allow_infinite = true;
    auto corpus = enumerate_dsum_corpus(budget);
    REQUIRE(corpus.size() > 100);

    for (int n = 0; n <= 1; ++n)
        for (int l = 0; l <= 2; ++l) {
            auto out = verify_distorted_sum_lemma(dsum, corpus, n, l);
            INFO("n=", n, " l=", l);
            REQUIRE(out.ok);
        }

    // serial and parallel sweeps agree
    auto serial = verify_distorted_sum_lemma(dsum, corpus, 1, 1, ExecMode::Serial);
    auto parallel = verify_distorted_sum_lemma(dsum, corpus, 1, 1, ExecMode::Parallel);
    CHECK(serial.table.export_text() == parallel.table.export_text());
}

TEST_CASE("compose_theory looks up recorded keys") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    std::vector<DistortedSumSpec> corpus{disjoint_sum_fixture()};
    auto out = verify_distorted_sum_lemma(dsum, corpus, 1, 1);
    REQUIRE(out.ok);

    // a key from a corpus member resolves to its recorded global type
    const DistortedSumSpec& spec = corpus[0];
    std::vector<Elem> tuple{spec.global().universe()[0]};
    std::string key = lemma_key(dsum, spec, tuple, 1, 1);
    TypeId direct = eng.thn(spec.global(), tuple, 1);
    CHECK(compose_theory(out.table, key) == direct);

    // a fresh spec outside the corpus whose key is recorded composes correctly
    Structure relabeled(Signature({{"E", 2}}), {300, 301, 302},
                        {{{300, 301}, {301, 300}, {302, 302}}});
    std::vector<ExtDistance> d{ExtDistance::zero(), ExtDistance::infinity(),
                               ExtDistance::infinity(), ExtDistance::zero()};
    DistortedSumSpec outside(Structure(Signature({{"R", 2}}), {0, 1}, {{{0, 1}}}),
                             MetricIndex({0, 1}, std::move(d)), relabeled, {0, 0, 1});
    std::vector<Elem> t2{300};
    std::string key2 = lemma_key(dsum, outside, t2, 1, 1);
    TypeId direct2 = eng.thn(outside.global(), t2, 1);
    CHECK(compose_theory(out.table, key2) == direct2);

    CHECK_THROWS_AS(compose_theory(out.table, "KL(nonexistent)"), DomainError);
}

TEST_CASE("lemma keys never collide on verified sums") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DsumCorpusBudget budget;
    budget.max_index = 2;
    budget.max_block = 2;
    budget.max_global = 2;
    budget.palette = {1, 2};
    auto corpus = enumerate_dsum_corpus(budget);
    std::vector<DistortedSumSpec> verified;
    for (auto& spec : corpus)
        if (verify_distorted_sum(eng, spec, 2).ok) verified.push_back(spec);
    REQUIRE(verified.size() > 50);
    auto out = verify_distorted_sum_lemma(dsum, verified, 2, 1);
    CHECK(out.ok);
}
