#include "fmtk/metric.hpp"

#include <algorithm>

namespace fmtk {

MetricIndex::MetricIndex(std::vector<Elem> points, std::vector<ExtDistance> matrix)
    : points_(std::move(points)), d_(std::move(matrix)) {
    if (!std::is_sorted(points_.begin(), points_.end()) ||
        std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw DomainError("metric: points must be sorted and unique");
    if (d_.size() != points_.size() * points_.size()) throw DomainError("metric: matrix size");
    validate();
}

void MetricIndex::validate() const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        if (dist_by_index(i, i) != ExtDistance::zero()) throw DomainError("metric: d(s,s) != 0");
        for (int j = 0; j < n; ++j) {
            if (dist_by_index(i, j) != dist_by_index(j, i))
                throw DomainError("metric: not symmetric");
            if (i != j && dist_by_index(i, j) == ExtDistance::zero())
                throw DomainError("metric: d(s,t) = 0 for s != t");
            for (int k = 0; k < n; ++k)
                if (dist_by_index(i, j) > dist_by_index(i, k) + dist_by_index(k, j))
                    throw DomainError("metric: triangle inequality violated");
        }
    }
}

MetricIndex MetricIndex::from_gaifman(const Structure& m) {
    const int n = m.size();
    std::vector<ExtDistance> d(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = m.gaifman_by_index(i, j);
    return MetricIndex(m.universe(), std::move(d));
}

MetricIndex MetricIndex::closure(std::vector<Elem> points, std::vector<ExtDistance> matrix) {
    const std::size_t n = points.size();
    if (matrix.size() != n * n) throw DomainError("metric closure: matrix size");
    for (std::size_t i = 0; i < n; ++i) matrix[i * n + i] = ExtDistance::zero();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ExtDistance via = matrix[i * n + k] + matrix[k * n + j];
                if (via < matrix[i * n + j]) matrix[i * n + j] = via;
            }
    return MetricIndex(std::move(points), std::move(matrix));
}

int MetricIndex::index_of(Elem p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return -1;
    return static_cast<int>(it - points_.begin());
}

ExtDistance MetricIndex::dist(Elem a, Elem b) const {
    int ia = index_of(a), ib = index_of(b);
    if (ia < 0 || ib < 0) throw DomainError("metric: point not in space");
    return dist_by_index(ia, ib);
}

ExtDistance MetricIndex::dist_tuple(std::span<const Elem> tuple, Elem t) const {
    ExtDistance best = ExtDistance::infinity();
    for (Elem e : tuple) best = std::min(best, dist(e, t));
    return best;
}

std::string MetricIndex::serial() const {
    std::string out = "metric[";
    for (Elem p : points_) {
        out += std::to_string(p);
        out += ',';
    }
    out += "|";
    for (const auto& v : d_) {
        out += v.str();
        out += ',';
    }
    out += ']';
    return out;
}

}  // namespace fmtk
