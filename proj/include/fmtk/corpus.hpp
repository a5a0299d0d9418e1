#pragma once

#include <cstdint>

#include "fmtk/dsum.hpp"
#include "fmtk/enumerate.hpp"

namespace fmtk {

// Corpus space for distorted-sum checks: one binary relation per sort
// (index symbol R, global symbol E). Metrics draw pairwise values from the
// palette (plus infinity), filtered by the triangle inequality; global
// relations are adjacency-local (every related pair at index distance <= 1),
// which is what makes the corpus-wide composition tables functional -- a far
// edge is exactly the corrupted fixture.
struct DsumCorpusBudget {
    int max_index = 2;
    int max_block = 2;
    int max_global = 3;  // cap on |M| (sum of block sizes)
    std::vector<std::uint64_t> palette = {1, 2, 4};
    bool allow_infinite = true;
    // Restrict index relations to pairs at metric distance <= 1. The tensor
    // hypothesis of the abstract lemma is falsified by index edges spanning
    // metric-far pairs (they are visible to th^0(I;s,t) but to no window and
    // no DTh pair), so the abstract-machinery corpora enforce this; the
    // plain distorted-sum-lemma corpora need not.
    bool index_adjacency_local = false;
    std::size_t cap = 500'000;
};

// Deterministic exhaustive enumeration of the budgeted space.
std::vector<DistortedSumSpec> enumerate_dsum_corpus(const DsumCorpusBudget& budget);

// Seeded random sample from the same space (rejection-free construction).
std::vector<DistortedSumSpec> sample_dsum_corpus(const DsumCorpusBudget& budget,
                                                 std::size_t count, std::uint64_t seed);

// Two-block direct sum (index distance infinite), relations inside blocks.
DistortedSumSpec disjoint_sum_fixture();

// Two far blocks joined by one directed edge: violates the distorted-sum
// condition (the edge is invisible to every window in the key).
DistortedSumSpec violating_fixture();

// Single index point carrying the whole global structure.
DistortedSumSpec single_point_fixture(const Structure& global);

}  // namespace fmtk
