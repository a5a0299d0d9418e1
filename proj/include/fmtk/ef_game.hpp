#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>

#include "fmtk/structure.hpp"

namespace fmtk {

// Independent oracle for type equality: the n-round Ehrenfeucht-Fraisse game,
// decided by the standard back-and-forth recursion. No interning or
// serialization machinery is involved beyond atomic fact comparison.

// Base equivalence of positions: membership masks, equality patterns among
// in-model entries, relation atoms, family contents and saturated distances.
bool atomic_equivalent(const Structure& a, std::span<const Elem> ta, const Structure& b,
                       std::span<const Elem> tb);

// Optional cross-call memo; safe to reuse across pairs from one corpus.
class EfMemo {
  public:
    struct Key {
        std::uint32_t ida, idb;
        std::uint32_t rounds;
        std::uint64_t ca, cb;  // packed local-index tuples, exact
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = k.ca * 0x9e3779b97f4a7c15ull;
            h ^= k.cb + 0xc2b2ae3d27d4eb4full + (h << 6) + (h >> 2);
            h ^= (std::uint64_t(k.ida) << 32) | k.idb;
            h ^= std::uint64_t(k.rounds) << 17;
            return static_cast<std::size_t>(h ^ (h >> 31));
        }
    };

    std::uint32_t structure_id(const Structure& s);
    bool lookup(const Key& k, bool& out) const;
    void store(const Key& k, bool value);
    std::size_t size() const { return memo_.size(); }

  private:
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

bool ef_equivalent(const Structure& a, std::span<const Elem> ta, const Structure& b,
                   std::span<const Elem> tb, int rounds, EfMemo* memo = nullptr);

}  // namespace fmtk
