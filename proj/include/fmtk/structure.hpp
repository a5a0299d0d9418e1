#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmtk/digest.hpp"
#include "fmtk/errors.hpp"
#include "fmtk/ext_distance.hpp"
#include "fmtk/signature.hpp"

namespace fmtk {

// Element identifier. Elements are plain integers; textual names from
// structure files are interned to ids by the parser.
using Elem = std::int32_t;

// Saturated pairwise-distance annotation: stands for the family of distance
// predicates D^k, k <= bound, of a two-sorted neighborhood model. Storing the
// saturated value min(d, bound+1) per pair carries exactly the same
// information as the 0/1 bits of every D^k (the bits are monotone in k).
struct DistAnnotation {
    std::uint64_t bound = 0;
    // n*n matrix of values in [0, bound+1]; bound+1 means "> bound" (incl. infinite).
    std::vector<std::uint64_t> sat;

    std::uint64_t at(int i, int j, int n) const { return sat[static_cast<std::size_t>(i) * n + j]; }
};

// A lazily materialized predicate family indexed by type digests
// (the R^t_{n,k,l} and Q^t_n families of the index expansions).
// For each tuple it stores the sorted set of digests t such that the
// t-indexed predicate holds on that tuple.
struct PredicateFamily {
    std::string name;
    int arity = 1;
    std::map<std::vector<Elem>, std::vector<Digest>> held;  // digests sorted

    const std::vector<Digest>* lookup(const std::vector<Elem>& tuple) const {
        auto it = held.find(tuple);
        return it == held.end() ? nullptr : &it->second;
    }
};

// Finite relational structure. Immutable after construction; the Gaifman
// (co-occurrence) distance matrix is computed eagerly so all queries are
// read-only and safe to share across threads.
class Structure {
  public:
    Structure() = default;
    Structure(Signature sig, std::vector<Elem> universe,
              std::vector<std::vector<std::vector<Elem>>> interp,
              std::vector<PredicateFamily> families = {},
              std::optional<DistAnnotation> dist = std::nullopt);

    const Signature& sig() const { return sig_; }
    const std::vector<Elem>& universe() const { return universe_; }  // sorted ascending
    int size() const { return static_cast<int>(universe_.size()); }
    bool empty() const { return universe_.empty(); }

    bool contains(Elem e) const { return local_index(e) >= 0; }
    int local_index(Elem e) const;  // -1 when absent

    // Tuples of the symbol with the given signature index, sorted.
    const std::vector<std::vector<Elem>>& tuples(int sym) const {
        return interp_[static_cast<std::size_t>(sym)];
    }
    bool holds(int sym, std::span<const Elem> tuple) const;

    const std::vector<PredicateFamily>& families() const { return families_; }
    const std::optional<DistAnnotation>& dist_annotation() const { return dist_; }

    // Gaifman distance on the co-occurrence graph (two elements adjacent iff
    // they appear together in some interpreted tuple). Domain error if either
    // element is outside the universe.
    ExtDistance gaifman(Elem a, Elem b) const;
    ExtDistance gaifman_by_index(int ia, int ib) const {
        return gdist_[static_cast<std::size_t>(ia) * universe_.size() + ib];
    }

    // Induced substructure on the given subset of the universe (ids are kept).
    Structure induced(std::vector<Elem> subset) const;

    // Canonical serialization of the whole structure; identical content
    // yields identical bytes regardless of construction order.
    const std::string& fingerprint() const { return fingerprint_; }

  private:
    void build_codes();
    void build_gaifman();
    void build_fingerprint();

    Signature sig_;
    std::vector<Elem> universe_;
    std::vector<std::vector<std::vector<Elem>>> interp_;  // per symbol, sorted tuples
    std::vector<PredicateFamily> families_;               // sorted by name
    std::optional<DistAnnotation> dist_;

    std::vector<std::vector<std::uint64_t>> codes_;  // per symbol, sorted packed tuples
    std::vector<ExtDistance> gdist_;                 // n*n Gaifman distances
    std::string fingerprint_;
};

// Shared immutable handle; balls and neighborhood models are built on the
// fly, and types keep these alive for recomputation-based projection.
using StructurePtr = std::shared_ptr<const Structure>;

template <class... Args>
StructurePtr make_structure(Args&&... args) {
    return std::make_shared<const Structure>(std::forward<Args>(args)...);
}

// Gaifman ball V^k(a-bar): all elements at Gaifman distance <= k from some
// entry. Empty tuple gives the empty structure (d(emptyset, t) = infinity).
Structure neighborhood(const Structure& m, std::span<const Elem> tuple, std::uint64_t k);

std::vector<Elem> ball_elements(const Structure& m, std::span<const Elem> tuple, std::uint64_t k);

// Disjoint union of structures over the same signature with disjoint universes.
Structure disjoint_union(const Structure& a, const Structure& b);

}  // namespace fmtk
