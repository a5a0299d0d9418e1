#pragma once

#include <span>
#include <vector>

#include "fmtk/ext_distance.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

// Finite integer-or-infinity metric space over a point set.
// Invariants (checked at construction): d(s,s)=0, symmetry, d(s,t)=0 => s=t,
// saturating triangle inequality.
class MetricIndex {
  public:
    MetricIndex() = default;
    MetricIndex(std::vector<Elem> points, std::vector<ExtDistance> matrix);

    // Gaifman metric of a structure.
    static MetricIndex from_gaifman(const Structure& m);

    // Repairs an arbitrary symmetric nonnegative matrix into a metric by
    // min-plus closure (saturating Floyd-Warshall), then validates.
    static MetricIndex closure(std::vector<Elem> points, std::vector<ExtDistance> matrix);

    const std::vector<Elem>& points() const { return points_; }
    int size() const { return static_cast<int>(points_.size()); }
    int index_of(Elem p) const;
    bool contains(Elem p) const { return index_of(p) >= 0; }

    ExtDistance dist(Elem a, Elem b) const;
    ExtDistance dist_by_index(int i, int j) const {
        return d_[static_cast<std::size_t>(i) * points_.size() + j];
    }

    // min over entries; empty tuple gives infinity.
    ExtDistance dist_tuple(std::span<const Elem> tuple, Elem t) const;

    std::string serial() const;

  private:
    void validate() const;

    std::vector<Elem> points_;  // sorted ascending
    std::vector<ExtDistance> d_;
};

}  // namespace fmtk
