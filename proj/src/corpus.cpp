#include "fmtk/corpus.hpp"

#include <algorithm>
#include <numeric>

namespace fmtk {

namespace {

constexpr Elem kGlobalBase = 100;  // keeps M and I id ranges disjoint

bool triangle_ok(const std::vector<ExtDistance>& d, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d[static_cast<std::size_t>(i) * n + j] >
                    d[static_cast<std::size_t>(i) * n + k] + d[static_cast<std::size_t>(k) * n + j])
                    return false;
    return true;
}

struct SpaceWalker {
    const DsumCorpusBudget& budget;
    std::vector<DistortedSumSpec> out;
    std::size_t cap_hits = 0;

    void emit(const Structure& index, MetricIndex metric, std::vector<int> blocks) {
        const int g = index.size();
        std::vector<Elem> global_universe;
        std::vector<Elem> h;
        for (int t = 0; t < g; ++t)
            for (int i = 0; i < blocks[static_cast<std::size_t>(t)]; ++i) {
                global_universe.push_back(kGlobalBase +
                                          static_cast<Elem>(global_universe.size()));
                h.push_back(t);
            }
        const int m = static_cast<int>(global_universe.size());

        // adjacency-local candidate pairs (ordered, loops allowed)
        std::vector<std::pair<Elem, Elem>> pairs;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (metric.dist(h[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)]) <=
                    1)
                    pairs.emplace_back(global_universe[static_cast<std::size_t>(i)],
                                       global_universe[static_cast<std::size_t>(j)]);
        if (pairs.size() > 25) throw BudgetError("dsum corpus: pair space too large");

        Signature gsig({{"E", 2}});
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
            std::vector<std::vector<Elem>> edges;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if ((mask >> p) & 1) edges.push_back({pairs[p].first, pairs[p].second});
            Structure global(gsig, global_universe, {std::move(edges)});
            out.emplace_back(index, metric, std::move(global), h);
            if (out.size() > budget.cap) throw BudgetError("dsum corpus: cap exceeded");
        }
    }

    void walk() {
        Signature isig({{"R", 2}});
        for (int g = 1; g <= budget.max_index; ++g) {
            std::vector<Elem> points(static_cast<std::size_t>(g));
            std::iota(points.begin(), points.end(), 0);

            // metric odometer over unordered pairs
            std::vector<std::uint64_t> palette = budget.palette;
            std::size_t base = palette.size() + (budget.allow_infinite ? 1 : 0);
            const int npairs = g * (g - 1) / 2;
            std::vector<std::size_t> midx(static_cast<std::size_t>(npairs), 0);
            while (true) {
                std::vector<ExtDistance> d(static_cast<std::size_t>(g) * g,
                                           ExtDistance::zero());
                int pidx = 0;
                for (int i = 0; i < g; ++i)
                    for (int j = i + 1; j < g; ++j) {
                        std::size_t choice = midx[static_cast<std::size_t>(pidx++)];
                        ExtDistance v = choice < palette.size()
                                            ? ExtDistance(palette[choice])
                                            : ExtDistance::infinity();
                        d[static_cast<std::size_t>(i) * g + j] = v;
                        d[static_cast<std::size_t>(j) * g + i] = v;
                    }
                if (triangle_ok(d, g)) {
                    MetricIndex metric(points, d);

                    // index relation odometer
                    std::vector<std::pair<Elem, Elem>> ipairs;
                    for (Elem s : points)
                        for (Elem t : points)
                            if (!budget.index_adjacency_local || metric.dist(s, t) <= 1)
                                ipairs.emplace_back(s, t);
                    for (std::uint64_t imask = 0;
                         imask < (std::uint64_t(1) << ipairs.size()); ++imask) {
                        std::vector<std::vector<Elem>> ir;
                        for (std::size_t p = 0; p < ipairs.size(); ++p)
                            if ((imask >> p) & 1)
                                ir.push_back({ipairs[p].first, ipairs[p].second});
                        Structure index(isig, points, {std::move(ir)});

                        // block profiles
                        std::vector<int> blocks(static_cast<std::size_t>(g), 0);
                        while (true) {
                            int total = std::accumulate(blocks.begin(), blocks.end(), 0);
                            if (total <= budget.max_global) emit(index, metric, blocks);
                            int c = g - 1;
                            while (c >= 0 &&
                                   blocks[static_cast<std::size_t>(c)] == budget.max_block) {
                                blocks[static_cast<std::size_t>(c)] = 0;
                                --c;
                            }
                            if (c < 0) break;
                            ++blocks[static_cast<std::size_t>(c)];
                        }
                    }
                }

                int c = npairs - 1;
                while (c >= 0 && midx[static_cast<std::size_t>(c)] + 1 == base) {
                    midx[static_cast<std::size_t>(c)] = 0;
                    --c;
                }
                if (c < 0) break;
                ++midx[static_cast<std::size_t>(c)];
            }
        }
    }
};

}  // namespace

std::vector<DistortedSumSpec> enumerate_dsum_corpus(const DsumCorpusBudget& budget) {
    SpaceWalker w{budget, {}, 0};
    w.walk();
    return std::move(w.out);
}

std::vector<DistortedSumSpec> sample_dsum_corpus(const DsumCorpusBudget& budget,
                                                 std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Signature isig({{"R", 2}});
    Signature gsig({{"E", 2}});
    std::vector<DistortedSumSpec> out;
    std::size_t attempts = 0;
    while (out.size() < count && attempts < count * 200 + 1000) {
        ++attempts;
        int g = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(budget.max_index));
        std::vector<Elem> points(static_cast<std::size_t>(g));
        std::iota(points.begin(), points.end(), 0);

        std::vector<ExtDistance> d(static_cast<std::size_t>(g) * g, ExtDistance::zero());
        std::size_t base = budget.palette.size() + (budget.allow_infinite ? 1 : 0);
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j) {
                std::size_t choice = rng() % base;
                ExtDistance v = choice < budget.palette.size()
                                    ? ExtDistance(budget.palette[choice])
                                    : ExtDistance::infinity();
                d[static_cast<std::size_t>(i) * g + j] = v;
                d[static_cast<std::size_t>(j) * g + i] = v;
            }
        if (!triangle_ok(d, g)) continue;
        MetricIndex metric(points, d);

        std::vector<std::vector<Elem>> ir;
        for (Elem s : points)
            for (Elem t : points) {
                if (budget.index_adjacency_local && !(metric.dist(s, t) <= 1)) continue;
                if (rng() & 1) ir.push_back({s, t});
            }
        Structure index(isig, points, {std::move(ir)});

        std::vector<Elem> universe;
        std::vector<Elem> h;
        for (int t = 0; t < g; ++t) {
            int size = static_cast<int>(rng() % static_cast<std::uint64_t>(budget.max_block + 1));
            for (int i = 0; i < size; ++i) {
                if (static_cast<int>(universe.size()) >= budget.max_global) break;
                universe.push_back(kGlobalBase + static_cast<Elem>(universe.size()));
                h.push_back(t);
            }
        }

        std::vector<std::vector<Elem>> edges;
        for (std::size_t i = 0; i < universe.size(); ++i)
            for (std::size_t j = 0; j < universe.size(); ++j)
                if (metric.dist(h[i], h[j]) <= 1 && (rng() & 1))
                    edges.push_back({universe[i], universe[j]});
        Structure global(gsig, universe, {std::move(edges)});
        out.emplace_back(std::move(index), std::move(metric), std::move(global), std::move(h));
    }
    if (out.size() < count) throw BudgetError("sample_dsum_corpus: rejection budget exhausted");
    return out;
}

DistortedSumSpec disjoint_sum_fixture() {
    Signature isig({{"R", 2}});
    Signature gsig({{"E", 2}});
    std::vector<ExtDistance> d{ExtDistance::zero(), ExtDistance::infinity(),
                               ExtDistance::infinity(), ExtDistance::zero()};
    MetricIndex metric({0, 1}, std::move(d));
    Structure index(isig, {0, 1}, {{{0, 1}}});
    Structure global(gsig, {100, 101, 102}, {{{100, 101}, {101, 100}, {102, 102}}});
    return DistortedSumSpec(std::move(index), std::move(metric), std::move(global),
                            {0, 0, 1});
}

DistortedSumSpec violating_fixture() {
    Signature isig({{"R", 2}});
    Signature gsig({{"E", 2}});
    std::vector<ExtDistance> d{ExtDistance::zero(), ExtDistance(2), ExtDistance(2),
                               ExtDistance::zero()};
    MetricIndex metric({0, 1}, std::move(d));
    Structure index(isig, {0, 1}, {{}});
    // one directed edge across blocks at index distance 2
    Structure global(gsig, {100, 101}, {{{100, 101}}});
    return DistortedSumSpec(std::move(index), std::move(metric), std::move(global), {0, 1});
}

DistortedSumSpec single_point_fixture(const Structure& global) {
    Signature isig({{"R", 2}});
    Elem point = 0;
    for (Elem e : global.universe()) point = std::max(point, e + 1);
    MetricIndex metric({point}, {ExtDistance::zero()});
    Structure index(isig, {point}, {{}});
    std::vector<Elem> h(static_cast<std::size_t>(global.size()), point);
    return DistortedSumSpec(std::move(index), std::move(metric), global, std::move(h));
}

}  // namespace fmtk
