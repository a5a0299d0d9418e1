#include "fmtk/structure.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace fmtk {

namespace {
constexpr int kBitsPerEntry = 6;  // universe <= 64, arity <= 10

std::uint64_t pack_local(std::span<const int> idx) {
    std::uint64_t code = 0;
    for (int v : idx) code = (code << kBitsPerEntry) | static_cast<std::uint64_t>(v + 1);
    return code;
}
}  // namespace

Structure::Structure(Signature sig, std::vector<Elem> universe,
                     std::vector<std::vector<std::vector<Elem>>> interp,
                     std::vector<PredicateFamily> families, std::optional<DistAnnotation> dist)
    : sig_(std::move(sig)),
      universe_(std::move(universe)),
      interp_(std::move(interp)),
      families_(std::move(families)),
      dist_(std::move(dist)) {
    std::sort(universe_.begin(), universe_.end());
    if (std::adjacent_find(universe_.begin(), universe_.end()) != universe_.end())
        throw DomainError("structure: duplicate element in universe");
    if (universe_.size() > 63) throw BudgetError("structure: universe larger than 63 elements");
    if (sig_.max_arity() > 10) throw BudgetError("structure: arity larger than 10");

    interp_.resize(sig_.size());
    for (std::size_t s = 0; s < sig_.size(); ++s) {
        const int k = sig_.at(static_cast<int>(s)).arity;
        for (auto& t : interp_[s]) {
            if (static_cast<int>(t.size()) != k)
                throw DomainError("structure: tuple arity mismatch for '" +
                                  sig_.at(static_cast<int>(s)).name + "'");
            for (Elem e : t)
                if (!std::binary_search(universe_.begin(), universe_.end(), e))
                    throw DomainError("structure: tuple element outside universe");
        }
        std::sort(interp_[s].begin(), interp_[s].end());
        interp_[s].erase(std::unique(interp_[s].begin(), interp_[s].end()), interp_[s].end());
    }

    std::sort(families_.begin(), families_.end(),
              [](const PredicateFamily& a, const PredicateFamily& b) { return a.name < b.name; });
    for (const auto& f : families_)
        for (const auto& [tuple, digs] : f.held) {
            if (static_cast<int>(tuple.size()) != f.arity)
                throw DomainError("structure: family tuple arity mismatch");
            if (!std::is_sorted(digs.begin(), digs.end()))
                throw DomainError("structure: family digests not sorted");
        }

    if (dist_ && dist_->sat.size() != universe_.size() * universe_.size())
        throw DomainError("structure: distance annotation size mismatch");

    build_codes();
    build_gaifman();
    build_fingerprint();
}

int Structure::local_index(Elem e) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
    if (it == universe_.end() || *it != e) return -1;
    return static_cast<int>(it - universe_.begin());
}

bool Structure::holds(int sym, std::span<const Elem> tuple) const {
    std::uint64_t code = 0;
    for (Elem e : tuple) {
        int li = local_index(e);
        if (li < 0) return false;
        code = (code << kBitsPerEntry) | static_cast<std::uint64_t>(li + 1);
    }
    const auto& cs = codes_[static_cast<std::size_t>(sym)];
    return std::binary_search(cs.begin(), cs.end(), code);
}

void Structure::build_codes() {
    codes_.resize(interp_.size());
    std::vector<int> idx;
    for (std::size_t s = 0; s < interp_.size(); ++s) {
        codes_[s].clear();
        codes_[s].reserve(interp_[s].size());
        for (const auto& t : interp_[s]) {
            idx.clear();
            for (Elem e : t) idx.push_back(local_index(e));
            codes_[s].push_back(pack_local(idx));
        }
        std::sort(codes_[s].begin(), codes_[s].end());
    }
}

void Structure::build_gaifman() {
    const int n = size();
    gdist_.assign(static_cast<std::size_t>(n) * n, ExtDistance::infinity());
    if (n == 0) return;

    // Co-occurrence adjacency: every interpreted tuple induces a clique.
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < interp_.size(); ++s)
        for (const auto& t : interp_[s])
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j) {
                    int a = local_index(t[i]), b = local_index(t[j]);
                    if (a != b) {
                        adj[static_cast<std::size_t>(a)].insert(b);
                        adj[static_cast<std::size_t>(b)].insert(a);
                    }
                }

    std::vector<std::uint64_t> dist(static_cast<std::size_t>(n));
    std::deque<int> queue;
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), std::uint64_t(-1));
        dist[static_cast<std::size_t>(src)] = 0;
        queue.clear();
        queue.push_back(src);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] == std::uint64_t(-1)) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
        }
        for (int v = 0; v < n; ++v)
            if (dist[static_cast<std::size_t>(v)] != std::uint64_t(-1))
                gdist_[static_cast<std::size_t>(src) * n + v] =
                    ExtDistance(dist[static_cast<std::size_t>(v)]);
    }
}

ExtDistance Structure::gaifman(Elem a, Elem b) const {
    int ia = local_index(a), ib = local_index(b);
    if (ia < 0 || ib < 0) throw DomainError("gaifman_distance: element not in universe");
    return gaifman_by_index(ia, ib);
}

void Structure::build_fingerprint() {
    std::string out = "st{";
    out += sig_.serial();
    out += "u[";
    for (Elem e : universe_) {
        out += std::to_string(e);
        out += ',';
    }
    out += ']';
    for (std::size_t s = 0; s < interp_.size(); ++s) {
        out += sig_.at(static_cast<int>(s)).name;
        out += '{';
        for (const auto& t : interp_[s]) {
            for (Elem e : t) {
                out += std::to_string(e);
                out += ',';
            }
            out += ';';
        }
        out += '}';
    }
    for (const auto& f : families_) {
        out += "fam:";
        out += f.name;
        out += '/';
        out += std::to_string(f.arity);
        out += '{';
        for (const auto& [tuple, digs] : f.held) {
            for (Elem e : tuple) {
                out += std::to_string(e);
                out += ',';
            }
            out += ':';
            for (const auto& d : digs) {
                out += d.hex();
                out += ',';
            }
            out += ';';
        }
        out += '}';
    }
    if (dist_) {
        out += "D@";
        out += std::to_string(dist_->bound);
        out += '{';
        for (std::uint64_t v : dist_->sat) {
            out += std::to_string(v);
            out += ',';
        }
        out += '}';
    }
    out += '}';
    fingerprint_ = std::move(out);
}

Structure Structure::induced(std::vector<Elem> subset) const {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (Elem e : subset)
        if (!contains(e)) throw DomainError("induced: element not in universe");

    auto inside = [&](Elem e) { return std::binary_search(subset.begin(), subset.end(), e); };

    std::vector<std::vector<std::vector<Elem>>> interp(sig_.size());
    for (std::size_t s = 0; s < interp_.size(); ++s)
        for (const auto& t : interp_[s])
            if (std::all_of(t.begin(), t.end(), inside)) interp[s].push_back(t);

    std::vector<PredicateFamily> fams;
    for (const auto& f : families_) {
        PredicateFamily g{f.name, f.arity, {}};
        for (const auto& [tuple, digs] : f.held)
            if (std::all_of(tuple.begin(), tuple.end(), inside)) g.held.emplace(tuple, digs);
        fams.push_back(std::move(g));
    }

    std::optional<DistAnnotation> dist;
    if (dist_) {
        DistAnnotation d2{dist_->bound, {}};
        const int n2 = static_cast<int>(subset.size());
        d2.sat.resize(static_cast<std::size_t>(n2) * n2);
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < n2; ++j)
                d2.sat[static_cast<std::size_t>(i) * n2 + j] =
                    dist_->at(local_index(subset[static_cast<std::size_t>(i)]),
                              local_index(subset[static_cast<std::size_t>(j)]), size());
        dist = std::move(d2);
    }

    return Structure(sig_, std::move(subset), std::move(interp), std::move(fams), std::move(dist));
}

std::vector<Elem> ball_elements(const Structure& m, std::span<const Elem> tuple, std::uint64_t k) {
    std::vector<Elem> out;
    for (Elem e : tuple)
        if (!m.contains(e)) throw DomainError("ball: tuple element not in universe");
    for (Elem v : m.universe()) {
        int iv = m.local_index(v);
        for (Elem e : tuple) {
            if (m.gaifman_by_index(m.local_index(e), iv) <= k) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

Structure neighborhood(const Structure& m, std::span<const Elem> tuple, std::uint64_t k) {
    return m.induced(ball_elements(m, tuple, k));
}

Structure disjoint_union(const Structure& a, const Structure& b) {
    if (!(a.sig() == b.sig())) throw DomainError("disjoint_union: signature mismatch");
    std::vector<Elem> universe = a.universe();
    for (Elem e : b.universe()) {
        if (a.contains(e)) throw DomainError("disjoint_union: universes overlap");
        universe.push_back(e);
    }
    std::vector<std::vector<std::vector<Elem>>> interp(a.sig().size());
    for (std::size_t s = 0; s < a.sig().size(); ++s) {
        interp[s] = a.tuples(static_cast<int>(s));
        const auto& bt = b.tuples(static_cast<int>(s));
        interp[s].insert(interp[s].end(), bt.begin(), bt.end());
    }
    if (!a.families().empty() || !b.families().empty() || a.dist_annotation() ||
        b.dist_annotation())
        throw UnsupportedError("disjoint_union: annotated structures not supported");
    return Structure(a.sig(), std::move(universe), std::move(interp));
}

}  // namespace fmtk
