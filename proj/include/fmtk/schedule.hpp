#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmtk/errors.hpp"

namespace fmtk {

// Paired depth/radius sequences beta(n) and r(n) = 2^{m(n)}. Radii are kept
// as integers directly since m(1) = log2(3) is not integral.
struct RadiusSchedule {
    std::vector<std::uint64_t> radius;  // r(n)
    std::vector<int> beta;              // beta(n)

    int max_n() const { return static_cast<int>(radius.size()) - 1; }
    std::uint64_t r(int n) const { return radius.at(static_cast<std::size_t>(n)); }
    int b(int n) const { return beta.at(static_cast<std::size_t>(n)); }

    // beta strictly increasing with beta(n) >= n; radii strictly increasing
    // with r(n+1) >= 3 r(n).
    void validate() const;

    std::string serial() const;
};

// r(0)=1, r(1)=3, r(n+1)=4 r(n); beta(0)=0 and beta(n+1) = beta(n) plus the
// depth needed to define distances <= r(n+1) (ceil(log2 r) + maxArity - 2),
// plus beta_boost. The boost covers setups where window theories must bind
// index points through the h-graph (two-sorted windows of generic sums);
// the identity-h graph setting works with the unboosted recipe.
RadiusSchedule radius_schedule(int n_max, int max_arity = 2, int beta_boost = 0);

}  // namespace fmtk
