#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

#include "fmtk/dsum.hpp"

namespace fmtk {

// alpha(0,l) = 0, alpha(n,l) = alpha(n-1,l+1) + l + 2.
std::uint64_t alpha(int n, int l);

// Two-sorted neighborhood model of a-bar at the given radius: carrier is the
// index points within distance <= radius of h(a-bar) plus their windows;
// relations are the restrictions of the global and index relations (prefixed
// m:/i:), the graph H of h, the sort predicates in_M/in_I, and the distance
// family D^k for k <= radius as a saturated annotation. Entries of a-bar may
// be global elements or index points.
Structure neighborhood_model(const DistortedSumSpec& spec, std::span<const Elem> tuple,
                             std::uint64_t radius);

// Builds neighborhood models and index expansions with memoization keyed on
// (spec fingerprint, n, l); owns the lazily materialized predicate families.
class DsumEngine {
  public:
    explicit DsumEngine(TheoryEngine& eng) : eng_(eng) {}

    TheoryEngine& theory() { return eng_; }

    // I^{n,l} of the distorted Feferman-Vaught expansion: tau_0 plus the
    // R^t_{j,k,l+(n-j)} families for 1 <= j <= n, k <= l+(n-j), plus
    // distances up to 2^n.
    StructurePtr index_expansion(const DistortedSumSpec& spec, int n, int l);

    void clear_cache();
    std::size_t cache_size() const;

  private:
    StructurePtr expansion_uncached(const DistortedSumSpec& spec, int n, int l);

    TheoryEngine& eng_;
    mutable std::mutex mu_;
    std::map<std::tuple<std::string, int, int>, StructurePtr> cache_;
};

// The distorted sum lemma as a corpus check: for every spec and every
// l-tuple a-bar, the key (th^n of h(a-bar) in I^{n,l}, the depth-n theories
// of the minimal n-components of a-bar in their 2^alpha(n,l)-radius
// neighborhood models) must determine th^n(M;a-bar).
VerifyOutcome verify_distorted_sum_lemma(DsumEngine& eng,
                                         std::span<const DistortedSumSpec> corpus, int n, int l,
                                         ExecMode mode = ExecMode::Serial);

// Table lookup; DomainError("unknown key") when the corpus did not realize it.
TypeId compose_theory(const CompositionTable& table, const std::string& key);

// The composite key of one instance, as used by verify_distorted_sum_lemma.
std::string lemma_key(DsumEngine& eng, const DistortedSumSpec& spec, std::span<const Elem> tuple,
                      int n, int l);

}  // namespace fmtk
