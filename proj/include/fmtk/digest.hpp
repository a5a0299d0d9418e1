#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>

namespace fmtk {

// 128-bit FNV-1a content digest. Used as a stable, scheduling-independent
// name for interned values (type digests name the lazily materialized
// R^t / Q^t predicate families). Not collision-resistant against adversaries;
// inputs here are corpus-derived.
struct Digest {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Digest&, const Digest&) = default;
    friend auto operator<=>(const Digest&, const Digest&) = default;

    std::string hex() const;
};

Digest fnv128(std::string_view bytes);

struct DigestHash {
    std::size_t operator()(const Digest& d) const noexcept {
        return static_cast<std::size_t>(d.hi ^ (d.lo * 0x9e3779b97f4a7c15ull));
    }
};

}  // namespace fmtk
