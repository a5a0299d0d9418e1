#pragma once

#include <deque>

#include "fmtk/expansion.hpp"
#include "fmtk/schedule.hpp"

namespace fmtk {

using DTheoryId = std::uint32_t;

// Interned distant-element theories DTh^k(I^n; s-bar):
// level 0 is th^0(I^n; s-bar); level k+1 is the set of pairs
// (DTh^k(I^{n-1}; s-bar^t), th^0(I^{n-1}; s-bar^t)) over t with
// d(s-bar,t) > r(k). Negative expansion levels clamp to 0.
class DTheoryEngine {
  public:
    DTheoryEngine(DsumEngine& dsum) : dsum_(dsum) {}

    // Abstract expansion I^n: tau_0 plus the unary Q^t_n family marking which
    // depth-beta(n) theories of elements of A_u are realized inside the
    // radius-r(n) neighborhood model of u. I^0 is the bare index.
    StructurePtr abstract_expansion(const DistortedSumSpec& spec, const RadiusSchedule& sched,
                                    int n);

    DTheoryId dtheory(const DistortedSumSpec& spec, const RadiusSchedule& sched, int n, int k,
                      std::span<const Elem> s_tuple);

    struct Node {
        int level = 0;
        Digest digest;
        std::string shallow;
        TypeId t0 = kNoType;                              // level 0
        std::vector<std::pair<DTheoryId, TypeId>> pairs;  // level > 0, digest-sorted
    };
    const Node& node(DTheoryId id) const;
    Digest digest_of(DTheoryId id) const { return node(id).digest; }

    DsumEngine& dsum() { return dsum_; }
    void clear_cache();

  private:
    DTheoryId intern(Node n);

    DsumEngine& dsum_;
    mutable std::mutex mu_;
    std::unordered_map<std::string_view, DTheoryId> by_key_;
    std::deque<Node> nodes_;

    std::mutex memo_mu_;
    // (spec fp + schedule serial, n, k, packed index tuple) -> id
    std::map<std::tuple<std::string, int, int, std::vector<Elem>>, DTheoryId> memo_;
    std::map<std::tuple<std::string, int>, StructurePtr> expansions_;
};

// The tensor hypothesis of the abstract lemma: for k <= n and every
// (spec, a-bar, b) with d(a-bar,b) <= r(k-1), the pair
// (DTh^k(I^k;h(a-bar)), Th^{beta(k)-1} over the r(k-1)-neighborhoods of the
// entries of a-bar evaluated at a-bar^b) must determine
// DTh^{k-1}(I^{k-1}; h(a-bar)^h(b)).
DeterminationResult check_otimes(DTheoryEngine& eng, std::span<const DistortedSumSpec> corpus,
                                 const RadiusSchedule& sched, int n, int max_len,
                                 ExecMode mode = ExecMode::Serial);

// Abstract distorted sum lemma: (DTh^n(I^n;h(a-bar)), Th^{beta(n)} over the
// r(n)-neighborhoods at a-bar) must determine th^n(M;a-bar).
VerifyOutcome verify_abstract_lemma(DTheoryEngine& eng, std::span<const DistortedSumSpec> corpus,
                                    const RadiusSchedule& sched, int n, int max_len,
                                    ExecMode mode = ExecMode::Serial);

}  // namespace fmtk
