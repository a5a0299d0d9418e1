#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fmtk/digest.hpp"
#include "fmtk/errors.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

using TypeId = std::uint32_t;
inline constexpr TypeId kNoType = 0xffffffffu;

// Structured content of a depth-0 type: membership mask (which tuple entries
// lie in the model), equality pattern over in-model positions, and the true
// atoms. Symbols with no true atoms are not listed, so the value is
// independent of the ambient signature; the characteristic-formula builder
// takes the signature separately.
struct Type0Data {
    int params = 0;
    std::uint32_t in_mask = 0;  // bit i set iff position i is in the model
    std::vector<int> eq;        // in-position: least equal position; out-position: -1

    struct RelBlock {
        std::string name;
        int arity = 1;
        std::vector<std::vector<int>> true_tuples;  // sorted position tuples
    };
    std::vector<RelBlock> rels;  // sorted by name; only symbols with true atoms

    struct FamBlock {
        std::string name;
        int arity = 1;
        std::vector<std::pair<std::vector<int>, std::vector<Digest>>> entries;  // sorted
    };
    std::vector<FamBlock> fams;

    // Saturated pairwise distances over in-position pairs i<j; present only
    // when the model is annotated and at least one such pair exists.
    struct DistBlock {
        std::uint64_t bound = 0;
        std::vector<std::uint64_t> vals;  // for pairs (i,j), i<j, both in-mask, in lex order
    };
    std::optional<DistBlock> dist;

    bool all_in() const { return in_mask == (params >= 32 ? ~0u : ((1u << params) - 1u)); }

    std::string serial() const;

    // Restriction to a strictly increasing list of positions.
    Type0Data project(std::span<const int> positions) const;
};

// Interned recursive type values. The intern key is the *shallow* canonical
// serialization: full Type0 serial at depth 0, and at depth n the sorted list
// of child digests (Merkle style). Node ids are process-local; digests and
// serializations are stable across runs and schedules.
class TypeTable {
  public:
    explicit TypeTable(std::size_t max_nodes = 50'000'000) : max_nodes_(max_nodes) {}

    TypeTable(const TypeTable&) = delete;
    TypeTable& operator=(const TypeTable&) = delete;

    TypeId intern_type0(Type0Data data);
    // children: depth-1 ids, deduplicated and sorted by digest internally.
    TypeId intern_node(int depth, int params, std::vector<TypeId> children);

    struct Node {
        int depth = 0;
        int params = 0;
        Digest digest;
        std::string shallow;                       // intern key
        std::shared_ptr<const Type0Data> t0;       // depth 0 only
        std::vector<TypeId> children;              // depth > 0; sorted by digest
    };

    // Nodes are immutable and never move; the returned reference stays valid.
    const Node& node(TypeId id) const;
    Digest digest_of(TypeId id) const { return node(id).digest; }
    int depth_of(TypeId id) const { return node(id).depth; }
    int params_of(TypeId id) const { return node(id).params; }

    // Documented external format: nested, sorted, length-prefixed. Grows
    // multiplicatively with depth; guarded by max_bytes.
    std::string full_serial(TypeId id, std::size_t max_bytes = 1u << 22) const;

    std::size_t size() const;

  private:
    TypeId intern_key(std::string key, Node node);

    mutable std::mutex mu_;
    std::unordered_map<std::string_view, TypeId> by_key_;
    std::deque<Node> nodes_;
    std::size_t max_nodes_;
};

}  // namespace fmtk
