#include <doctest.h>

#include <random>

#include "fmtk/enumerate.hpp"
#include "fmtk/metric.hpp"
#include "fmtk/partition.hpp"
#include "fmtk/structure.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("gaifman distance on paths and triangles") {
    Structure p = path_graph(3);  // a-b-c
    CHECK(p.gaifman(0, 2) == ExtDistance(2));
    CHECK(p.gaifman(0, 0) == ExtDistance::zero());
    CHECK(p.gaifman(0, 1) == ExtDistance(1));

    // one ternary tuple R(a,b,c): all pairwise distances 1, fourth vertex infinite
    Structure t(Signature({{"R", 3}}), {0, 1, 2, 3}, {{{0, 1, 2}}});
    CHECK(t.gaifman(0, 1) == ExtDistance(1));
    CHECK(t.gaifman(1, 2) == ExtDistance(1));
    CHECK(t.gaifman(0, 2) == ExtDistance(1));
    CHECK(t.gaifman(0, 3).is_infinite());
    CHECK_THROWS_AS((void)t.gaifman(0, 99), DomainError);
}

TEST_CASE("neighborhood balls") {
    Structure p = path_graph(5);  // 0-1-2-3-4
    std::vector<Elem> c{2};
    Structure ball = neighborhood(p, c, 1);
    CHECK(ball.universe() == std::vector<Elem>{1, 2, 3});
    CHECK(ball.tuples(0).size() == 4);  // both directions of 1-2, 2-3

    // radius 0: induced on the entries themselves
    Structure b0 = neighborhood(p, c, 0);
    CHECK(b0.universe() == std::vector<Elem>{2});

    // empty tuple gives the empty structure
    std::vector<Elem> none;
    CHECK(neighborhood(p, none, 7).empty());

    // saturation at the component
    Structure b9 = neighborhood(p, c, 9);
    CHECK(b9.universe() == p.universe());

    // monotone in the radius
    for (std::uint64_t k = 0; k < 4; ++k) {
        auto small = ball_elements(p, c, k);
        auto big = ball_elements(p, c, k + 1);
        for (Elem e : small) CHECK(std::find(big.begin(), big.end(), e) != big.end());
    }
}

TEST_CASE("metric validation") {
    CHECK_THROWS_AS(metric3(ExtDistance(1), ExtDistance(1), ExtDistance::infinity()),
                    DomainError);  // triangle violated through point 0
    MetricIndex ok = metric3(ExtDistance(2), ExtDistance(4), ExtDistance(2));
    CHECK(ok.dist(0, 2) == ExtDistance(4));
    std::vector<Elem> pair{0};
    CHECK(ok.dist_tuple(pair, 2) == ExtDistance(4));
    std::vector<Elem> none;
    CHECK(ok.dist_tuple(none, 2).is_infinite());
}

TEST_CASE("component partitions") {
    // d(s,t)=2, d(t,u)=2, d(s,u)=4
    MetricIndex m = metric3(ExtDistance(2), ExtDistance(4), ExtDistance(2));
    std::vector<Elem> j{0, 1, 2};
    Partition p1 = component_partition(j, 1, m);  // threshold 2: chained
    CHECK(p1.block_count() == 1);
    Partition p0 = component_partition(j, 0, m);  // threshold 1: singletons
    CHECK(p0.block_count() == 3);
    Partition p2 = component_partition(j, 2, m);  // threshold 4 >= max distance
    CHECK(p2.block_count() == 1);

    // permutation invariance of the presentation order
    std::vector<Elem> shuffled{2, 0, 1};
    CHECK(component_partition(shuffled, 1, m) == p1);

    // tuple positions: duplicates share a block
    std::vector<Elem> tup{2, 0, 2};
    auto blocks = tuple_components(tup, 0, m);
    CHECK(blocks.size() == 2);
    CHECK(blocks[0] == std::vector<int>{0, 2});
    CHECK(blocks[1] == std::vector<int>{1});
}

TEST_CASE("component laws on random metrics") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Elem> pts;
        int n = 2 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) pts.push_back(i);
        MetricIndex m = random_metric(pts, 6, 0.2, rng);
        for (int level = 0; level <= 3; ++level) {
            Partition p = component_partition(pts, level, m);
            // blocks disjoint and covering
            std::size_t total = 0;
            for (const auto& b : p.blocks) total += b.size();
            CHECK(total == pts.size());
            // refinement: level partitions refine level+1 partitions
            Partition q = component_partition(pts, level + 1, m);
            for (const auto& b : p.blocks) {
                int owner = q.block_of(b[0]);
                for (Elem e : b) CHECK(q.block_of(e) == owner);
            }
        }
    }
}

TEST_CASE("induced keeps annotations consistent") {
    Structure p = path_graph(4);
    std::vector<Elem> sub{1, 2};
    Structure ind = p.induced(sub);
    CHECK(ind.size() == 2);
    CHECK(ind.tuples(0).size() == 2);
    CHECK(ind.fingerprint() != p.fingerprint());
    // distances recomputed within the substructure
    CHECK(ind.gaifman(1, 2) == ExtDistance(1));
}
