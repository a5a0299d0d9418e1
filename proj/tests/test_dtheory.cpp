#include <doctest.h>

#include "fmtk/corpus.hpp"
#include "fmtk/dtheory.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("radius schedule") {
    RadiusSchedule s = radius_schedule(3);
    CHECK(s.radius == std::vector<std::uint64_t>{1, 3, 12, 48});
    for (int n = 1; n <= 2; ++n) CHECK(s.r(n + 1) == 4 * s.r(n));
    for (int n = 0; n < 3; ++n) CHECK(s.r(n + 1) >= 3 * s.r(n));
    CHECK(s.beta == std::vector<int>{0, 2, 6, 12});
    s.validate();  // no throw

    RadiusSchedule ternary = radius_schedule(2, 3);
    CHECK(ternary.beta == std::vector<int>{0, 3, 8});
}

TEST_CASE("abstract expansion") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DTheoryEngine dt(dsum);
    RadiusSchedule sched = radius_schedule(2);

    DistortedSumSpec fx = disjoint_sum_fixture();
    // n = 0 is the bare index
    CHECK(dt.abstract_expansion(fx, sched, 0)->fingerprint() == fx.index().fingerprint());
    CHECK(dt.abstract_expansion(fx, sched, -3)->fingerprint() == fx.index().fingerprint());

    StructurePtr e1 = dt.abstract_expansion(fx, sched, 1);
    REQUIRE(e1->families().size() == 1);
    CHECK(e1->families()[0].name == "Q1");
    CHECK(e1->families()[0].held.size() == 2);  // both points carry elements

    // empty blocks realize no Q predicates
    Signature isig({{"R", 2}});
    std::vector<ExtDistance> d{ExtDistance::zero()};
    DistortedSumSpec empty_blocks(Structure(isig, {0}, {{}}), MetricIndex({0}, std::move(d)),
                                  Structure(Signature({{"E", 2}}), {}, {{}}), {});
    StructurePtr eb = dt.abstract_expansion(empty_blocks, sched, 1);
    CHECK(eb->families().empty());
}

TEST_CASE("dtheory recursion") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DTheoryEngine dt(dsum);
    RadiusSchedule sched = radius_schedule(2);

    // three-point index, distances 2 apart except one infinite pair
    Signature isig({{"R", 2}});
    std::vector<Elem> pts{0, 1, 2};
    std::vector<ExtDistance> d(9, ExtDistance::zero());
    auto set = [&](int i, int j, ExtDistance v) {
        d[static_cast<std::size_t>(i) * 3 + j] = v;
        d[static_cast<std::size_t>(j) * 3 + i] = v;
    };
    set(0, 1, ExtDistance(2));
    set(0, 2, ExtDistance::infinity());
    set(1, 2, ExtDistance::infinity());
    Structure index(isig, pts, {{}});
    Structure global(Signature({{"E", 2}}), {100, 101, 102}, {{}});
    DistortedSumSpec spec(index, MetricIndex(pts, std::move(d)), global, {0, 1, 2});

    // level 0 equals th0 of the expansion
    std::vector<Elem> s0{0};
    DTheoryId d0 = dt.dtheory(spec, sched, 1, 0, s0);
    CHECK(dt.node(d0).level == 0);
    CHECK(dt.node(d0).t0 == eng.th0(*dt.abstract_expansion(spec, sched, 1), s0));

    // level 1 from point 0 with threshold r(0)=1: points 1 and 2 qualify
    DTheoryId d1 = dt.dtheory(spec, sched, 1, 1, s0);
    CHECK(dt.node(d1).level == 1);
    CHECK(dt.node(d1).pairs.size() <= 2);
    CHECK(!dt.node(d1).pairs.empty());

    // hand unwinding: from the pair {0,1} every point is within distance 2 of
    // the tuple except the isolated point 2
    std::vector<Elem> s01{0, 1};
    RadiusSchedule wide = radius_schedule(2);
    // with threshold r(1)=3 only the infinitely-far point 2 qualifies
    DTheoryId d2 = dt.dtheory(spec, wide, 2, 2, s01);
    CHECK(dt.node(d2).pairs.size() == 1);

    // all points within r(k): empty set at the next level
    std::vector<ExtDistance> close(9, ExtDistance(1));
    close[0] = close[4] = close[8] = ExtDistance::zero();
    DistortedSumSpec near(index, MetricIndex(pts, std::move(close)), global, {0, 1, 2});
    DTheoryId dn = dt.dtheory(near, sched, 1, 1, s0);
    CHECK(dt.node(dn).pairs.empty());

    // invariance under an index automorphism fixing the tuple: swapping the
    // two infinitely-far points 1 and 2 relabels the spec but not DTh
    DistortedSumSpec swapped(index, spec.metric(), global, {0, 2, 1});
    CHECK(dt.digest_of(dt.dtheory(swapped, sched, 1, 1, s0)) == dt.digest_of(d1));
}

TEST_CASE("otimes hypothesis and abstract lemma on a small corpus") {
    TheoryEngine eng;
    DsumEngine dsum(eng);
    DTheoryEngine dt(dsum);
    // Generic sums read index relations through the h-graph inside two-sorted
    // windows, which costs one extra quantifier of beta headroom; without it
    // the tensor hypothesis genuinely fails (the depth beta(1)-1 = 1 window
    // theory cannot see the direction of an index edge between h(a) and h(b)).
    RadiusSchedule sched = radius_schedule(2, 2, 1);

    DsumCorpusBudget budget;
    budget.max_index = 2;
    budget.max_block = 1;
    budget.max_global = 2;
    budget.palette = {1, 2};
    budget.index_adjacency_local = true;
    auto corpus = enumerate_dsum_corpus(budget);
    REQUIRE(corpus.size() > 100);

    // n = 0: vacuously functional
    auto r0 = check_otimes(dt, corpus, sched, 0, 2);
    CHECK(r0.functional);

    // single-point corpora: everything local
    std::vector<DistortedSumSpec> singles;
    singles.push_back(single_point_fixture(path_graph(2)));
    singles.push_back(single_point_fixture(edgeless(2)));
    CHECK(check_otimes(dt, singles, sched, 1, 2).functional);
    CHECK(verify_abstract_lemma(dt, singles, sched, 1, 2).ok);

    auto rx = check_otimes(dt, corpus, sched, 1, 2);
    CHECK(rx.functional);

    auto lemma = verify_abstract_lemma(dt, corpus, sched, 1, 2);
    CHECK(lemma.ok);

    // disjoint sums stay functional
    std::vector<DistortedSumSpec> disjoint{disjoint_sum_fixture()};
    CHECK(verify_abstract_lemma(dt, disjoint, sched, 1, 2).ok);

    // scheduling independence
    auto ser = verify_abstract_lemma(dt, corpus, sched, 1, 1, ExecMode::Serial);
    auto par = verify_abstract_lemma(dt, corpus, sched, 1, 1, ExecMode::Parallel);
    CHECK(ser.table.export_text() == par.table.export_text());
}
