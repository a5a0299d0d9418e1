#include "fmtk/partition.hpp"

#include <algorithm>

namespace fmtk {

namespace {
std::uint64_t threshold(int n) {
    if (n < 0 || n > 62) throw DomainError("component threshold: n out of range");
    return std::uint64_t(1) << n;
}
}  // namespace

int Partition::block_of(Elem e) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), e)) return static_cast<int>(b);
    return -1;
}

bool component_step(Elem s, Elem t, int n, const MetricIndex& d) {
    return d.dist(s, t) <= threshold(n);
}

Partition component_partition(std::span<const Elem> j, int n, const MetricIndex& d) {
    std::vector<Elem> pts(j.begin(), j.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (Elem p : pts)
        if (!d.contains(p)) throw DomainError("component_partition: point not in metric space");

    const std::uint64_t th = threshold(n);
    const std::size_t m = pts.size();
    std::vector<int> block(m, -1);
    Partition out;
    // BFS closure of the one-step relation within J. Points are scanned in
    // sorted order, so blocks come out ordered by least member.
    for (std::size_t i = 0; i < m; ++i) {
        if (block[i] >= 0) continue;
        std::vector<std::size_t> queue{i};
        block[i] = static_cast<int>(out.blocks.size());
        std::vector<Elem> members;
        while (!queue.empty()) {
            std::size_t u = queue.back();
            queue.pop_back();
            members.push_back(pts[u]);
            for (std::size_t v = 0; v < m; ++v)
                if (block[v] < 0 && d.dist(pts[u], pts[v]) <= th) {
                    block[v] = block[i];
                    queue.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.blocks.push_back(std::move(members));
    }
    return out;
}

bool component_related(std::span<const Elem> j, Elem s, Elem t, int n, const MetricIndex& d) {
    Partition p = component_partition(j, n, d);
    int bs = p.block_of(s), bt = p.block_of(t);
    if (bs < 0 || bt < 0) throw DomainError("component_related: element not in J");
    return bs == bt;
}

std::vector<std::vector<int>> tuple_components(std::span<const Elem> tuple, int n,
                                               const MetricIndex& d) {
    Partition p = component_partition(tuple, n, d);
    std::vector<std::vector<int>> out(p.block_count());
    for (std::size_t i = 0; i < tuple.size(); ++i)
        out[static_cast<std::size_t>(p.block_of(tuple[i]))].push_back(static_cast<int>(i));
    // Partition blocks are ordered by least member id; re-order by least position.
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    return out;
}

}  // namespace fmtk
