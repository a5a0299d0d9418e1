#include "fmtk/dtheory.hpp"

#include <algorithm>

namespace fmtk {

void RadiusSchedule::validate() const {
    if (radius.size() != beta.size()) throw DomainError("schedule: length mismatch");
    for (std::size_t i = 0; i < radius.size(); ++i) {
        if (beta[i] < static_cast<int>(i)) throw DomainError("schedule: beta(n) < n");
        if (i > 0) {
            if (beta[i] <= beta[i - 1]) throw DomainError("schedule: beta not increasing");
            if (radius[i] < 3 * radius[i - 1]) throw DomainError("schedule: r(n+1) < 3 r(n)");
        }
    }
}

std::string RadiusSchedule::serial() const {
    std::string out = "sched[r=";
    for (auto r : radius) {
        out += std::to_string(r);
        out += ',';
    }
    out += "b=";
    for (auto b : beta) {
        out += std::to_string(b);
        out += ',';
    }
    out += ']';
    return out;
}

RadiusSchedule radius_schedule(int n_max, int max_arity, int beta_boost) {
    if (n_max < 0) throw DomainError("radius_schedule: n_max < 0");
    if (max_arity < 2) throw DomainError("radius_schedule: max arity < 2");
    if (beta_boost < 0) throw DomainError("radius_schedule: negative boost");
    RadiusSchedule s;
    for (int n = 0; n <= n_max; ++n) {
        std::uint64_t r = n == 0 ? 1 : (n == 1 ? 3 : 0);
        if (n >= 2) r = 4 * s.radius.back();
        s.radius.push_back(r);
        if (n == 0) {
            s.beta.push_back(0);
        } else {
            int log2r = 0;
            while ((std::uint64_t(1) << log2r) < r) ++log2r;
            s.beta.push_back(s.beta.back() + log2r + (max_arity - 2) + beta_boost);
        }
    }
    s.validate();
    return s;
}

StructurePtr DTheoryEngine::abstract_expansion(const DistortedSumSpec& spec,
                                               const RadiusSchedule& sched, int n) {
    if (n < 0) n = 0;  // I^{-k} is I^0
    std::string cache_key = spec.fingerprint() + sched.serial();
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = expansions_.find({cache_key, n});
        if (it != expansions_.end()) return it->second;
    }

    const Structure& index = spec.index();
    StructurePtr built;
    if (n == 0) {
        built = make_structure(index);
    } else {
        TheoryEngine& theory = dsum_.theory();
        PredicateFamily fam;
        fam.name = "Q" + std::to_string(n);
        fam.arity = 1;
        for (Elem u : index.universe()) {
            std::vector<Digest> digs;
            std::vector<Elem> point{u};
            Structure model = neighborhood_model(spec, point, sched.r(n));
            for (Elem c : spec.block(u)) {
                std::vector<Elem> param{c};
                digs.push_back(theory.table().digest_of(theory.thn(model, param, sched.b(n))));
            }
            std::sort(digs.begin(), digs.end());
            digs.erase(std::unique(digs.begin(), digs.end()), digs.end());
            if (!digs.empty()) fam.held.emplace(point, std::move(digs));
        }
        std::vector<PredicateFamily> fams;
        if (!fam.held.empty()) fams.push_back(std::move(fam));
        std::vector<std::vector<std::vector<Elem>>> interp;
        for (std::size_t s = 0; s < index.sig().size(); ++s)
            interp.push_back(index.tuples(static_cast<int>(s)));
        built = make_structure(index.sig(), index.universe(), std::move(interp), std::move(fams));
    }

    std::lock_guard<std::mutex> lock(memo_mu_);
    auto [it, ignore] = expansions_.emplace(std::make_tuple(cache_key, n), built);
    return it->second;
}

DTheoryId DTheoryEngine::intern(Node n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_key_.find(std::string_view(n.shallow));
    if (it != by_key_.end()) return it->second;
    DTheoryId id = static_cast<DTheoryId>(nodes_.size());
    nodes_.push_back(std::move(n));
    by_key_.emplace(std::string_view(nodes_.back().shallow), id);
    return id;
}

const DTheoryEngine::Node& DTheoryEngine::node(DTheoryId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.at(id);
}

DTheoryId DTheoryEngine::dtheory(const DistortedSumSpec& spec, const RadiusSchedule& sched, int n,
                                 int k, std::span<const Elem> s_tuple) {
    if (k < 0) throw DomainError("dtheory: negative level");
    if (n < 0) n = 0;
    for (Elem s : s_tuple)
        if (!spec.index().contains(s)) throw DomainError("dtheory: point outside the index");

    std::string cache_key = spec.fingerprint() + sched.serial();
    std::vector<Elem> key_tuple(s_tuple.begin(), s_tuple.end());
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = memo_.find({cache_key, n, k, key_tuple});
        if (it != memo_.end()) return it->second;
    }

    TheoryEngine& theory = dsum_.theory();
    Node node;
    node.level = k;
    if (k == 0) {
        StructurePtr expansion = abstract_expansion(spec, sched, n);
        node.t0 = theory.th0(*expansion, s_tuple);
        node.shallow = "D0{" + theory.table().digest_of(node.t0).hex() + "}";
    } else {
        if (k - 1 >= static_cast<int>(sched.radius.size()))
            throw DomainError("dtheory: schedule too short for level");
        StructurePtr below = abstract_expansion(spec, sched, n - 1);
        std::vector<std::pair<DTheoryId, TypeId>> pairs;
        std::vector<Elem> extended(s_tuple.begin(), s_tuple.end());
        extended.push_back(0);
        for (Elem t : spec.index().universe()) {
            ExtDistance d = ExtDistance::infinity();
            for (Elem s : s_tuple) d = std::min(d, spec.metric().dist(s, t));
            if (!(d > sched.r(k - 1))) continue;
            extended.back() = t;
            DTheoryId sub = dtheory(spec, sched, n - 1, k - 1, extended);
            TypeId base = theory.th0(*below, extended);
            pairs.emplace_back(sub, base);
        }
        std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            Digest da = digest_of(a.first), db = digest_of(b.first);
            if (da != db) return da < db;
            return theory.table().digest_of(a.second) < theory.table().digest_of(b.second);
        });
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        node.pairs = std::move(pairs);
        node.shallow = "D" + std::to_string(k) + "{";
        for (const auto& [d, t] : node.pairs) {
            node.shallow += digest_of(d).hex();
            node.shallow += ':';
            node.shallow += theory.table().digest_of(t).hex();
            node.shallow += ';';
        }
        node.shallow += '}';
    }
    node.digest = fnv128(node.shallow);
    DTheoryId id = intern(std::move(node));

    std::lock_guard<std::mutex> lock(memo_mu_);
    memo_.emplace(std::make_tuple(std::move(cache_key), n, k, std::move(key_tuple)), id);
    return id;
}

void DTheoryEngine::clear_cache() {
    std::lock_guard<std::mutex> lock(memo_mu_);
    memo_.clear();
    expansions_.clear();
}

namespace {

// Th^{depth}(M^{radius}(x-bar); y-bar): the sequence of theories of y-bar in
// the per-entry neighborhood models of x-bar (Notation 1.11).
std::string th_sequence_digest(DsumEngine& dsum, const DistortedSumSpec& spec,
                               std::span<const Elem> centers, std::span<const Elem> params,
                               std::uint64_t radius, int depth) {
    TheoryEngine& theory = dsum.theory();
    std::string out;
    for (Elem x : centers) {
        std::vector<Elem> center{x};
        Structure model = neighborhood_model(spec, center, radius);
        out += theory.table().digest_of(theory.thn(model, params, depth)).hex();
        out += ',';
    }
    return out;
}

}  // namespace

DeterminationResult check_otimes(DTheoryEngine& eng, std::span<const DistortedSumSpec> corpus,
                                 const RadiusSchedule& sched, int n, int max_len, ExecMode mode) {
    if (n > sched.max_n()) throw DomainError("check_otimes: schedule too short");
    // instance space: spec x k x a-bar x b, flattened per spec
    std::vector<std::size_t> base(corpus.size() + 1, 0);
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        std::size_t m = static_cast<std::size_t>(corpus[s].global().size());
        std::size_t tuples = 0;
        for (int len = 0; len <= max_len; ++len) {
            std::size_t t = 1;
            for (int i = 0; i < len; ++i) t *= m;
            tuples += t;
        }
        base[s + 1] = base[s] + tuples * static_cast<std::size_t>(n + 1) * (m + 1);
    }

    DeterminationMap map = sweep_determination(mode, corpus.size(), [&](DeterminationMap& acc,
                                                                        std::size_t si) {
        const DistortedSumSpec& spec = corpus[si];
        DsumEngine& dsum = eng.dsum();
        const Structure& g = spec.global();
        const int m = g.size();
        std::size_t offset = 0;

        for (int len = 0; len <= max_len; ++len) {
            if (m == 0 && len > 0) break;
            std::vector<int> odo(static_cast<std::size_t>(len), 0);
            std::vector<Elem> tuple;
            while (true) {
                tuple.clear();
                for (int p : odo) tuple.push_back(g.universe()[static_cast<std::size_t>(p)]);
                std::vector<Elem> hs = spec.h_tuple(tuple);

                for (int k = 1; k <= n; ++k) {
                    for (int bi = 0; bi < m; ++bi) {
                        Elem b = g.universe()[static_cast<std::size_t>(bi)];
                        ExtDistance d = ExtDistance::infinity();
                        for (Elem a : tuple) d = std::min(d, spec.dist(a, b));
                        if (!(d <= sched.r(k - 1))) continue;

                        DTheoryId dth = eng.dtheory(spec, sched, k, k, hs);
                        std::vector<Elem> extended = tuple;
                        extended.push_back(b);
                        // The hypothesis quantifies within one sum, so the
                        // key is scoped by the spec.
                        std::string key = "OT(" + fnv128(spec.fingerprint()).hex() +
                                          ";k=" + std::to_string(k) + ";";
                        key += eng.digest_of(dth).hex();
                        key += '|';
                        key += th_sequence_digest(dsum, spec, tuple, extended, sched.r(k - 1),
                                                  sched.b(k) - 1);
                        key += ')';

                        std::vector<Elem> hext = hs;
                        hext.push_back(spec.h(b));
                        DTheoryId target = eng.dtheory(spec, sched, k - 1, k - 1, hext);

                        std::string prov = "spec#" + std::to_string(si) +
                                           ":k=" + std::to_string(k) + ":tuple=[";
                        for (Elem a : tuple) {
                            prov += std::to_string(a);
                            prov += ',';
                        }
                        prov += "]:b=" + std::to_string(b);
                        acc.add(std::move(key), eng.digest_of(target).hex(), std::move(prov),
                                base[si] + offset);
                        ++offset;
                    }
                }

                int c = len - 1;
                while (c >= 0 && odo[static_cast<std::size_t>(c)] == m - 1) {
                    odo[static_cast<std::size_t>(c)] = 0;
                    --c;
                }
                if (c < 0) break;
                ++odo[static_cast<std::size_t>(c)];
            }
        }
    });
    return map.result();
}

VerifyOutcome verify_abstract_lemma(DTheoryEngine& eng, std::span<const DistortedSumSpec> corpus,
                                    const RadiusSchedule& sched, int n, int max_len,
                                    ExecMode mode) {
    if (n > sched.max_n()) throw DomainError("verify_abstract_lemma: schedule too short");
    std::vector<std::size_t> base(corpus.size() + 1, 0);
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        std::size_t m = static_cast<std::size_t>(corpus[s].global().size());
        std::size_t tuples = 0;
        for (int len = 0; len <= max_len; ++len) {
            std::size_t t = 1;
            for (int i = 0; i < len; ++i) t *= m;
            tuples += t;
        }
        base[s + 1] = base[s] + tuples;
    }

    std::vector<CompositionTable> partial(corpus.size(),
                                          CompositionTable("lemma-1.12", n, max_len));

    sweep(mode, corpus.size(), [&](std::size_t si) {
        const DistortedSumSpec& spec = corpus[si];
        DsumEngine& dsum = eng.dsum();
        TheoryEngine& theory = dsum.theory();
        const Structure& g = spec.global();
        const int m = g.size();
        std::size_t offset = 0;

        for (int len = 0; len <= max_len; ++len) {
            if (m == 0 && len > 0) break;
            std::vector<int> odo(static_cast<std::size_t>(len), 0);
            std::vector<Elem> tuple;
            while (true) {
                tuple.clear();
                for (int p : odo) tuple.push_back(g.universe()[static_cast<std::size_t>(p)]);
                std::vector<Elem> hs = spec.h_tuple(tuple);

                DTheoryId dth = eng.dtheory(spec, sched, n, n, hs);
                // F_n exists per sum ("let M be a distorted sum..."); the
                // empty tuple's key carries nothing about M, so cross-spec
                // accumulation would collide spuriously. Scope by the spec.
                std::string key = "AB(" + fnv128(spec.fingerprint()).hex() +
                                  ";n=" + std::to_string(n) + ";";
                key += eng.digest_of(dth).hex();
                key += '|';
                key += th_sequence_digest(dsum, spec, tuple, tuple, sched.r(n), sched.b(n));
                key += ')';

                TypeId value = theory.thn(g, tuple, n);
                std::string prov = "spec#" + std::to_string(si) + ":tuple=[";
                for (Elem a : tuple) {
                    prov += std::to_string(a);
                    prov += ',';
                }
                prov += ']';
                partial[si].add(key, theory.table().digest_of(value).hex(), value,
                                std::move(prov), base[si] + offset);
                ++offset;

                int c = len - 1;
                while (c >= 0 && odo[static_cast<std::size_t>(c)] == m - 1) {
                    odo[static_cast<std::size_t>(c)] = 0;
                    --c;
                }
                if (c < 0) break;
                ++odo[static_cast<std::size_t>(c)];
            }
        }
    });

    CompositionTable table("lemma-1.12", n, max_len);
    for (const auto& p : partial) table.merge(p);
    VerifyOutcome out;
    auto res = table.check();
    out.ok = res.functional;
    out.witness = res.witness;
    out.table = std::move(table);
    return out;
}

}  // namespace fmtk
