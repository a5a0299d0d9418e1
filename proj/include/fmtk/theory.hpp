#pragma once

#include <mutex>
#include <span>
#include <unordered_map>

#include "fmtk/errors.hpp"
#include "fmtk/type_table.hpp"

namespace fmtk {

// Computes bounded-depth theories th^n(M; a-bar) into a shared intern table.
// Memoization is keyed by (structure fingerprint, depth, packed tuple), so
// types of identical substructures coincide across models and corpora.
// All entry points are thread-safe; results are independent of scheduling.
class TheoryEngine {
  public:
    explicit TheoryEngine(Budget budget = {})
        : budget_(budget), table_(budget.max_interned_nodes) {}

    TypeTable& table() { return table_; }
    const TypeTable& table() const { return table_; }
    const Budget& budget() const { return budget_; }

    // th^0: atomic diagram plus membership mask (tuple entries outside the
    // model are recorded as absent, per the convention for a-bar not in M).
    TypeId th0(const Structure& m, std::span<const Elem> tuple);

    // th^n by the recursion th^{n+1}(M;a) = { th^n(M;a^b) : b in M }.
    TypeId thn(const Structure& m, std::span<const Elem> tuple, int n);

    // Depth lowering on the interned value, no model needed.
    TypeId reduce_depth(TypeId t, int target_depth);

    // Parameter projection by recomputation against the originating model.
    TypeId project_params(const Structure& m, std::span<const Elem> tuple, int n,
                          std::span<const int> positions);

    void clear_memo();
    std::size_t memo_size() const;
    // Drops tuple memos once they exceed the given size. Interned types stay.
    void trim_memo(std::size_t max_entries);

  private:
    struct MemoKey {
        std::uint32_t fp;
        std::uint16_t n;
        std::uint16_t len;
        std::uint64_t packed;
        friend bool operator==(const MemoKey&, const MemoKey&) = default;
    };
    struct MemoKeyHash {
        std::size_t operator()(const MemoKey& k) const noexcept {
            std::uint64_t h = k.packed * 0x9e3779b97f4a7c15ull;
            h ^= (std::uint64_t(k.fp) << 20) ^ (std::uint64_t(k.n) << 8) ^ k.len;
            h *= 0xc2b2ae3d27d4eb4full;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };

    std::uint32_t register_structure(const Structure& m);
    bool pack_tuple(const Structure& m, std::span<const Elem> tuple, std::uint64_t& out) const;
    TypeId thn_packed(const Structure& m, std::uint32_t fp, std::vector<int>& locals, int n);
    TypeId th0_locals(const Structure& m, std::span<const int> locals);

    Budget budget_;
    TypeTable table_;

    mutable std::mutex memo_mu_;
    std::unordered_map<MemoKey, TypeId, MemoKeyHash> memo_;

    mutable std::mutex reg_mu_;
    std::unordered_map<std::string, std::uint32_t> registry_;
};

// A type value bundled with its provenance, for operations that need a live
// model handle (parameter projection).
struct TypedTuple {
    StructurePtr model;
    std::vector<Elem> tuple;
    int depth = 0;
    TypeId id = kNoType;
};

TypedTuple compute_type(TheoryEngine& eng, StructurePtr model, std::vector<Elem> tuple, int n);
TypedTuple project_type(TheoryEngine& eng, const TypedTuple& t, std::span<const int> positions);

}  // namespace fmtk
