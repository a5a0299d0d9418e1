#include "fmtk/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fmtk/metric.hpp"

namespace fmtk {

namespace {

// All tuples over 0..n-1 of the given arity, lexicographic.
std::vector<std::vector<Elem>> all_tuples(int n, int arity) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> cur(static_cast<std::size_t>(arity), 0);
    while (true) {
        out.push_back(cur);
        int c = arity - 1;
        while (c >= 0 && cur[static_cast<std::size_t>(c)] == n - 1) {
            cur[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 0) break;
        ++cur[static_cast<std::size_t>(c)];
    }
    return out;
}

}  // namespace

std::string canonical_form(const Structure& s) {
    const int n = s.size();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    std::vector<Elem> mapped;
    do {
        std::string cur = "n=" + std::to_string(n) + ";";
        for (std::size_t sym = 0; sym < s.sig().size(); ++sym) {
            std::vector<std::vector<Elem>> tuples;
            for (const auto& t : s.tuples(static_cast<int>(sym))) {
                mapped.clear();
                for (Elem e : t)
                    mapped.push_back(perm[static_cast<std::size_t>(s.local_index(e))]);
                tuples.push_back(mapped);
            }
            std::sort(tuples.begin(), tuples.end());
            cur += s.sig().at(static_cast<int>(sym)).name;
            cur += '{';
            for (const auto& t : tuples) {
                for (Elem e : t) {
                    cur += std::to_string(e);
                    cur += ',';
                }
                cur += ';';
            }
            cur += '}';
        }
        if (best.empty() || cur < best) best = std::move(cur);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Structure> enumerate_structures(const Signature& sig, int max_size, bool dedup_iso,
                                            std::size_t cap) {
    std::vector<Structure> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<Elem> universe(static_cast<std::size_t>(n));
        std::iota(universe.begin(), universe.end(), 0);

        // Per-symbol ground tuples and an odometer over subset masks.
        std::vector<std::vector<std::vector<Elem>>> ground;
        std::vector<std::uint64_t> mask, limit;
        for (const auto& sym : sig.symbols()) {
            ground.push_back(all_tuples(n, sym.arity));
            if (ground.back().size() > 30)
                throw BudgetError("enumerate_structures: tuple space too large");
            mask.push_back(0);
            limit.push_back(std::uint64_t(1) << ground.back().size());
        }

        while (true) {
            std::vector<std::vector<std::vector<Elem>>> interp(sig.size());
            for (std::size_t s = 0; s < sig.size(); ++s)
                for (std::size_t t = 0; t < ground[s].size(); ++t)
                    if ((mask[s] >> t) & 1) interp[s].push_back(ground[s][t]);
            Structure st(sig, universe, std::move(interp));
            bool keep = true;
            if (dedup_iso) keep = seen.insert(canonical_form(st)).second;
            if (keep) {
                out.push_back(std::move(st));
                if (out.size() > cap) throw BudgetError("enumerate_structures: cap exceeded");
            }

            std::size_t c = 0;
            while (c < mask.size() && mask[c] + 1 == limit[c]) {
                mask[c] = 0;
                ++c;
            }
            if (c == mask.size()) break;
            ++mask[c];
        }
    }
    return out;
}

std::vector<Structure> enumerate_graphs(const std::string& edge, int max_size, std::size_t cap) {
    Signature sig({{edge, 2}});
    std::vector<Structure> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<Elem> universe(static_cast<std::size_t>(n));
        std::iota(universe.begin(), universe.end(), 0);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        if (pairs.size() > 30) throw BudgetError("enumerate_graphs: too many vertex pairs");
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
            std::vector<std::vector<Elem>> edges;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if ((mask >> p) & 1) {
                    edges.push_back({pairs[p].first, pairs[p].second});
                    edges.push_back({pairs[p].second, pairs[p].first});
                }
            Structure st(sig, universe, {std::move(edges)});
            if (seen.insert(canonical_form(st)).second) {
                out.push_back(std::move(st));
                if (out.size() > cap) throw BudgetError("enumerate_graphs: cap exceeded");
            }
        }
    }
    return out;
}

Structure random_graph(int n, double edge_prob, Rng& rng, const std::string& edge) {
    std::vector<Elem> universe(static_cast<std::size_t>(n));
    std::iota(universe.begin(), universe.end(), 0);
    std::bernoulli_distribution flip(edge_prob);
    std::vector<std::vector<Elem>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (flip(rng)) {
                edges.push_back({i, j});
                edges.push_back({j, i});
            }
    return Structure(Signature({{edge, 2}}), std::move(universe), {std::move(edges)});
}

Structure random_graph_with_unary(int n, double edge_prob, double c_prob, Rng& rng,
                                  const std::string& edge, const std::string& unary) {
    Structure g = random_graph(n, edge_prob, rng, edge);
    std::bernoulli_distribution flip(c_prob);
    std::vector<std::vector<Elem>> marks;
    for (Elem v : g.universe())
        if (flip(rng)) marks.push_back({v});
    Signature sig({{edge, 2}, {unary, 1}});
    std::vector<std::vector<std::vector<Elem>>> interp(2);
    interp[static_cast<std::size_t>(sig.index_of(edge))] = g.tuples(0);
    interp[static_cast<std::size_t>(sig.index_of(unary))] = std::move(marks);
    return Structure(sig, g.universe(), std::move(interp));
}

MetricIndex random_metric(std::vector<Elem> points, std::uint64_t max_finite, double inf_prob,
                          Rng& rng) {
    std::sort(points.begin(), points.end());
    const std::size_t n = points.size();
    std::vector<ExtDistance> d(n * n, ExtDistance::zero());
    std::uniform_int_distribution<std::uint64_t> val(1, max_finite);
    std::bernoulli_distribution inf(inf_prob);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ExtDistance v = inf(rng) ? ExtDistance::infinity() : ExtDistance(val(rng));
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return MetricIndex::closure(std::move(points), std::move(d));
}

}  // namespace fmtk
