#include "fmtk/expansion.hpp"

#include <algorithm>

#include "fmtk/partition.hpp"

namespace fmtk {

std::uint64_t alpha(int n, int l) {
    if (n < 0 || l < 0 || n > 64 || l > 64) throw DomainError("alpha: arguments out of range");
    std::uint64_t acc = 0;
    while (n > 0) {
        acc += static_cast<std::uint64_t>(l) + 2;
        --n;
        ++l;
    }
    return acc;
}

Structure neighborhood_model(const DistortedSumSpec& spec, std::span<const Elem> tuple,
                             std::uint64_t radius) {
    const Structure& index = spec.index();
    const Structure& global = spec.global();

    // Qualifying index points: within radius of some resolved entry.
    std::vector<Elem> points;
    for (Elem t : index.universe()) {
        for (Elem x : tuple) {
            if (spec.metric().dist(spec.resolve(x), t) <= radius) {
                points.push_back(t);
                break;
            }
        }
    }

    std::vector<Elem> carrier_m;
    for (Elem t : points)
        for (Elem a : spec.window_elements(t)) carrier_m.push_back(a);
    std::sort(carrier_m.begin(), carrier_m.end());
    carrier_m.erase(std::unique(carrier_m.begin(), carrier_m.end()), carrier_m.end());

    std::vector<Elem> carrier = points;
    carrier.insert(carrier.end(), carrier_m.begin(), carrier_m.end());
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());

    auto in_m = [&](Elem e) {
        return std::binary_search(carrier_m.begin(), carrier_m.end(), e);
    };
    auto in_i = [&](Elem e) { return std::binary_search(points.begin(), points.end(), e); };

    std::vector<Symbol> symbols;
    for (const auto& s : global.sig().symbols()) symbols.push_back({"m:" + s.name, s.arity});
    for (const auto& s : index.sig().symbols()) symbols.push_back({"i:" + s.name, s.arity});
    symbols.push_back({"H", 2});
    symbols.push_back({"in_M", 1});
    symbols.push_back({"in_I", 1});
    Signature sig(std::move(symbols));

    std::vector<std::vector<std::vector<Elem>>> interp(sig.size());
    for (std::size_t s = 0; s < global.sig().size(); ++s) {
        int dst = sig.index_of("m:" + global.sig().at(static_cast<int>(s)).name);
        for (const auto& t : global.tuples(static_cast<int>(s)))
            if (std::all_of(t.begin(), t.end(), in_m)) interp[static_cast<std::size_t>(dst)].push_back(t);
    }
    for (std::size_t s = 0; s < index.sig().size(); ++s) {
        int dst = sig.index_of("i:" + index.sig().at(static_cast<int>(s)).name);
        for (const auto& t : index.tuples(static_cast<int>(s)))
            if (std::all_of(t.begin(), t.end(), in_i)) interp[static_cast<std::size_t>(dst)].push_back(t);
    }
    {
        int dst = sig.index_of("H");
        for (Elem a : carrier_m) {
            Elem t = spec.h(a);
            if (in_i(t)) interp[static_cast<std::size_t>(dst)].push_back({a, t});
        }
        dst = sig.index_of("in_M");
        for (Elem a : carrier_m) interp[static_cast<std::size_t>(dst)].push_back({a});
        dst = sig.index_of("in_I");
        for (Elem t : points) interp[static_cast<std::size_t>(dst)].push_back({t});
    }

    DistAnnotation dist;
    dist.bound = radius;
    const int nc = static_cast<int>(carrier.size());
    dist.sat.resize(static_cast<std::size_t>(nc) * nc);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            ExtDistance d = spec.dist(carrier[static_cast<std::size_t>(i)],
                                      carrier[static_cast<std::size_t>(j)]);
            dist.sat[static_cast<std::size_t>(i) * nc + j] =
                d <= radius ? d.value() : radius + 1;
        }

    return Structure(sig, std::move(carrier), std::move(interp), {}, std::move(dist));
}

StructurePtr DsumEngine::index_expansion(const DistortedSumSpec& spec, int n, int l) {
    if (n < 0 || l < 0) throw DomainError("index_expansion: bad arguments");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find({spec.fingerprint(), n, l});
        if (it != cache_.end()) return it->second;
    }
    StructurePtr built = expansion_uncached(spec, n, l);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(std::make_tuple(spec.fingerprint(), n, l), built);
    return it->second;
}

StructurePtr DsumEngine::expansion_uncached(const DistortedSumSpec& spec, int n, int l) {
    const Structure& index = spec.index();
    if (n == 0) return make_structure(index);

    StructurePtr below = index_expansion(spec, n - 1, l + 1);

    // New families R^t_{n,k,l} for k <= l: R holds on (u_0..u_{k-1},u_k) iff
    // the tuple is an n-component and some witnesses c_i in h^-1(u_i) give
    // th^{alpha(n-1,l+1)}(M^n(u-bar); c-bar, u_k) = t. At k=0 the predicate
    // marks the realized element theories of A_u inside M^n(u) (the shape the
    // induction consumes; the point-parameter variant cannot see the block
    // contents at depth alpha(0,l+1)=0 and the composition collides).
    std::vector<PredicateFamily> families = below->families();
    const std::uint64_t radius = std::uint64_t(1) << n;
    const int depth = static_cast<int>(alpha(n - 1, l + 1));

    {
        PredicateFamily fam;
        fam.name = "R" + std::to_string(n) + ",0," + std::to_string(l);
        fam.arity = 1;
        for (Elem u : index.universe()) {
            std::vector<Elem> point{u};
            Structure model = neighborhood_model(spec, point, radius);
            std::vector<Digest> digs;
            for (Elem c : spec.block(u)) {
                std::vector<Elem> param{c};
                digs.push_back(eng_.table().digest_of(eng_.thn(model, param, depth)));
            }
            std::sort(digs.begin(), digs.end());
            digs.erase(std::unique(digs.begin(), digs.end()), digs.end());
            if (!digs.empty()) fam.held.emplace(point, std::move(digs));
        }
        if (!fam.held.empty()) families.push_back(std::move(fam));
    }

    for (int k = 1; k <= l; ++k) {
        PredicateFamily fam;
        fam.name = "R" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(l);
        fam.arity = k + 1;

        std::vector<int> odo(static_cast<std::size_t>(k + 1), 0);
        const int g = index.size();
        if (g == 0) break;
        while (true) {
            std::vector<Elem> utuple;
            for (int p : odo) utuple.push_back(index.universe()[static_cast<std::size_t>(p)]);

            // n-component test within the tuple's own point set
            Partition part = component_partition(utuple, n, spec.metric());
            if (part.block_count() == 1) {
                std::vector<Digest> digs;
                Structure model = neighborhood_model(spec, utuple, radius);
                // witness odometer over the blocks of u_0..u_{k-1}
                std::vector<std::vector<Elem>> blocks;
                bool possible = true;
                for (int i = 0; i < k; ++i) {
                    blocks.push_back(spec.block(utuple[static_cast<std::size_t>(i)]));
                    if (blocks.back().empty()) possible = false;
                }
                if (possible) {
                    std::vector<std::size_t> widx(static_cast<std::size_t>(k), 0);
                    while (true) {
                        std::vector<Elem> params;
                        for (int i = 0; i < k; ++i)
                            params.push_back(blocks[static_cast<std::size_t>(i)]
                                                   [widx[static_cast<std::size_t>(i)]]);
                        params.push_back(utuple.back());
                        TypeId t = eng_.thn(model, params, depth);
                        digs.push_back(eng_.table().digest_of(t));

                        int c = k - 1;
                        while (c >= 0 && widx[static_cast<std::size_t>(c)] + 1 ==
                                             blocks[static_cast<std::size_t>(c)].size()) {
                            widx[static_cast<std::size_t>(c)] = 0;
                            --c;
                        }
                        if (c < 0) break;
                        ++widx[static_cast<std::size_t>(c)];
                    }
                    std::sort(digs.begin(), digs.end());
                    digs.erase(std::unique(digs.begin(), digs.end()), digs.end());
                    if (!digs.empty()) fam.held.emplace(utuple, std::move(digs));
                }
            }

            int c = k;
            while (c >= 0 && odo[static_cast<std::size_t>(c)] == g - 1) {
                odo[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
            ++odo[static_cast<std::size_t>(c)];
        }
        if (!fam.held.empty()) families.push_back(std::move(fam));
    }

    DistAnnotation dist;
    dist.bound = std::uint64_t(1) << n;
    const int g = index.size();
    dist.sat.resize(static_cast<std::size_t>(g) * g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            ExtDistance d = spec.metric().dist_by_index(i, j);
            dist.sat[static_cast<std::size_t>(i) * g + j] =
                d <= dist.bound ? d.value() : dist.bound + 1;
        }

    std::vector<std::vector<std::vector<Elem>>> interp;
    for (std::size_t s = 0; s < index.sig().size(); ++s) interp.push_back(index.tuples(static_cast<int>(s)));
    return make_structure(index.sig(), index.universe(), std::move(interp), std::move(families),
                          std::move(dist));
}

void DsumEngine::clear_cache() {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.clear();
}

std::size_t DsumEngine::cache_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.size();
}

std::string lemma_key(DsumEngine& eng, const DistortedSumSpec& spec, std::span<const Elem> tuple,
                      int n, int l) {
    TheoryEngine& theory = eng.theory();
    StructurePtr expansion = eng.index_expansion(spec, n, l);
    std::vector<Elem> hs = spec.h_tuple(tuple);

    std::string key = "KL(n=" + std::to_string(n) + ";";
    key += theory.table().digest_of(theory.thn(*expansion, hs, n)).hex();
    key += '|';

    if (alpha(n, l) > 62) throw BudgetError("lemma_key: alpha radius exponent too large");
    const std::uint64_t radius = std::uint64_t(1) << alpha(n, l);
    for (const auto& block : tuple_components(hs, n, spec.metric())) {
        std::vector<Elem> sub;
        for (int pos : block) sub.push_back(tuple[static_cast<std::size_t>(pos)]);
        Structure model = neighborhood_model(spec, sub, radius);
        key += theory.table().digest_of(theory.thn(model, sub, n)).hex();
        key += ',';
    }
    key += ')';
    return key;
}

VerifyOutcome verify_distorted_sum_lemma(DsumEngine& eng,
                                         std::span<const DistortedSumSpec> corpus, int n, int l,
                                         ExecMode mode) {
    // Deterministic instance indices: per-spec bases from tuple counts.
    std::vector<std::size_t> base(corpus.size() + 1, 0);
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        std::size_t tuples = 1;
        for (int i = 0; i < l; ++i) tuples *= static_cast<std::size_t>(corpus[s].global().size());
        base[s + 1] = base[s] + tuples;
    }

    std::vector<CompositionTable> partial(
        corpus.size(), CompositionTable("lemma-1.9", n, l));

    sweep(mode, corpus.size(), [&](std::size_t si) {
        const DistortedSumSpec& spec = corpus[si];
        TheoryEngine& theory = eng.theory();
        const Structure& g = spec.global();
        const int m = g.size();
        if (m == 0 && l > 0) return;

        std::vector<int> odo(static_cast<std::size_t>(l), 0);
        std::size_t ti = 0;
        std::vector<Elem> tuple;
        while (true) {
            tuple.clear();
            for (int p : odo) tuple.push_back(g.universe()[static_cast<std::size_t>(p)]);

            std::string key = lemma_key(eng, spec, tuple, n, l);
            TypeId value = theory.thn(g, tuple, n);
            std::string prov = "spec#" + std::to_string(si) + ":tuple=[";
            for (Elem b : tuple) {
                prov += std::to_string(b);
                prov += ',';
            }
            prov += ']';
            partial[si].add(key, theory.table().digest_of(value).hex(), value, std::move(prov),
                            base[si] + ti);
            ++ti;

            int c = l - 1;
            while (c >= 0 && odo[static_cast<std::size_t>(c)] == m - 1) {
                odo[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
            ++odo[static_cast<std::size_t>(c)];
        }
    });

    CompositionTable table("lemma-1.9", n, l);
    for (const auto& p : partial) table.merge(p);

    VerifyOutcome out;
    auto res = table.check();
    out.ok = res.functional;
    out.witness = res.witness;
    out.table = std::move(table);
    return out;
}

TypeId compose_theory(const CompositionTable& table, const std::string& key) {
    TypeId id = table.lookup_type(key);
    if (id == kNoType)
        throw DomainError("compose_theory: unknown key (not realized by the corpus)");
    return id;
}

}  // namespace fmtk
