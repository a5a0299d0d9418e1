#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace fmtk {

// Nonnegative integer distance extended with a distinguished INFINITY.
// Addition saturates; comparisons are total.
class ExtDistance {
  public:
    constexpr ExtDistance() : v_(kInf) {}
    constexpr explicit ExtDistance(std::uint64_t v) : v_(v) {}

    static constexpr ExtDistance infinity() { return ExtDistance(); }
    static constexpr ExtDistance zero() { return ExtDistance(0); }

    constexpr bool is_infinite() const { return v_ == kInf; }
    constexpr bool is_finite() const { return v_ != kInf; }

    // Finite value; only meaningful when is_finite().
    constexpr std::uint64_t value() const { return v_; }

    friend constexpr ExtDistance operator+(ExtDistance a, ExtDistance b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        std::uint64_t s = a.v_ + b.v_;
        if (s < a.v_) return infinity();  // overflow saturates
        return ExtDistance(s);
    }

    friend constexpr auto operator<=>(ExtDistance a, ExtDistance b) = default;

    friend constexpr bool operator<=(ExtDistance a, std::uint64_t k) {
        return a.is_finite() && a.v_ <= k;
    }
    friend constexpr bool operator>(ExtDistance a, std::uint64_t k) { return !(a <= k); }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

    friend std::ostream& operator<<(std::ostream& os, ExtDistance d) { return os << d.str(); }

  private:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t v_;
};

}  // namespace fmtk
