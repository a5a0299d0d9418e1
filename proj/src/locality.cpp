#include "fmtk/locality.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fmtk {

DistortedSumSpec as_distorted_sum(const Structure& m) {
    std::vector<Elem> identity = m.universe();
    return DistortedSumSpec(m, MetricIndex::from_gaifman(m), m, std::move(identity));
}

int distance_depth(int max_arity, int n) {
    if (max_arity < 2) throw DomainError("distance_depth: arity < 2, distance is degenerate");
    if (n < 0) throw DomainError("distance_depth: n < 0");
    return n + max_arity - 2;
}

namespace {

// d(x,y) <= 1: x = y, or some interpreted tuple contains both.
FormulaPtr distance_le_one(const Signature& sig, int x, int y, int next_var) {
    std::vector<FormulaPtr> cases;
    cases.push_back(Formula::eq(x, y));
    for (const auto& sym : sig.symbols()) {
        if (sym.arity < 2) continue;
        for (int px = 0; px < sym.arity; ++px)
            for (int py = 0; py < sym.arity; ++py) {
                if (px == py) continue;
                // fill other positions with fresh existentials, innermost last
                std::vector<int> vars(static_cast<std::size_t>(sym.arity));
                int fresh = next_var;
                for (int p = 0; p < sym.arity; ++p) {
                    if (p == px)
                        vars[static_cast<std::size_t>(p)] = x;
                    else if (p == py)
                        vars[static_cast<std::size_t>(p)] = y;
                    else
                        vars[static_cast<std::size_t>(p)] = fresh++;
                }
                FormulaPtr atom = Formula::rel(sym.name, vars);
                for (int v = fresh - 1; v >= next_var; --v) atom = Formula::exists(v, atom);
                cases.push_back(std::move(atom));
            }
    }
    return Formula::disj(std::move(cases));
}

}  // namespace

FormulaPtr distance_le_general(const Signature& sig, std::uint64_t threshold, int x, int y,
                               int next_var) {
    if (threshold == 0) return Formula::eq(x, y);
    if (threshold == 1) return distance_le_one(sig, x, y, next_var);
    std::uint64_t a = threshold / 2, b = threshold - a;
    int mid = next_var;
    FormulaPtr left = distance_le_general(sig, a, x, mid, next_var + 1);
    FormulaPtr right = distance_le_general(sig, b, mid, y, next_var + 1);
    return Formula::exists(mid, Formula::conj({std::move(left), std::move(right)}));
}

FormulaPtr distance_formula(const Signature& sig, std::uint64_t threshold, DistCmp cmp) {
    if (threshold == 0 || (threshold & (threshold - 1)) != 0)
        throw DomainError("distance_formula: threshold must be a power of two");
    FormulaPtr le = distance_le_general(sig, threshold, 0, 1, 2);
    return cmp == DistCmp::LessEq ? le : Formula::negation(std::move(le));
}

DefinableSet DefinableSet::predicate(std::string name) {
    DefinableSet s;
    s.pred_ = std::move(name);
    return s;
}

DefinableSet DefinableSet::formula(FormulaPtr phi) {
    if (phi->max_var() > 0) throw DomainError("definable set: formula must have one free variable");
    DefinableSet s;
    s.phi_ = std::move(phi);
    return s;
}

bool DefinableSet::member(const Structure& m, Elem e) const {
    if (!pred_.empty()) {
        int sym = m.sig().index_of(pred_);
        if (sym < 0) throw DomainError("definable set: predicate " + pred_ + " not in signature");
        std::vector<Elem> t{e};
        return m.holds(sym, t);
    }
    std::vector<Elem> t{e};
    return eval_formula(m, *phi_, t);
}

std::vector<Elem> DefinableSet::extension(const Structure& m) const {
    std::vector<Elem> out;
    for (Elem e : m.universe())
        if (member(m, e)) out.push_back(e);
    return out;
}

int DefinableSet::formula_depth() const { return phi_ ? phi_->depth() : 0; }

std::string DefinableSet::describe() const { return pred_.empty() ? phi_->str() : pred_; }

namespace {

// Exact max-scattered search with simple suffix pruning; candidates are
// pairwise-tested at distance > 2m inside the given structure.
int max_scattered(const Structure& m, const std::vector<Elem>& candidates, std::uint64_t two_m,
                  int cap) {
    int best = 0;
    std::vector<Elem> chosen;
    auto far = [&](Elem e) {
        for (Elem c : chosen)
            if (m.gaifman(c, e) <= two_m) return false;
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(chosen.size()) > best) best = static_cast<int>(chosen.size());
        if (best >= cap) return;
        if (chosen.size() + (candidates.size() - from) <= static_cast<std::size_t>(best)) return;
        for (std::size_t i = from; i < candidates.size(); ++i) {
            if (!far(candidates[i])) continue;
            chosen.push_back(candidates[i]);
            rec(i + 1);
            chosen.pop_back();
            if (best >= cap) return;
        }
    };
    rec(0);
    return std::min(best, cap);
}

}  // namespace

int scattered_max(const Structure& m, const DefinableSet& c, std::uint64_t m_radius, int cap) {
    if (cap < 1) throw DomainError("scattered_max: cap must be >= 1");
    return max_scattered(m, c.extension(m), 2 * m_radius, cap);
}

bool distant_exists_brute(const Structure& m, std::span<const Elem> tuple, const DefinableSet& c,
                          std::uint64_t m_radius) {
    for (Elem e : c.extension(m)) {
        ExtDistance d = ExtDistance::infinity();
        for (Elem a : tuple) d = std::min(d, m.gaifman(a, e));
        if (d > m_radius) return true;
    }
    return false;
}

bool distant_exists_local(const Structure& ball, std::span<const Elem> tuple,
                          const DefinableSet& c, std::uint64_t m_radius, int tuple_len,
                          int global_scatter_max) {
    for (Elem a : tuple)
        if (!ball.contains(a))
            throw DomainError("distant_exists_local: tuple entry outside the ball");
    if (static_cast<std::size_t>(tuple_len) != tuple.size())
        throw DomainError("distant_exists_local: length mismatch");
    if (global_scatter_max < 0 || global_scatter_max > tuple_len + 1)
        throw DomainError("distant_exists_local: scatter max out of range");

    // Case 1: a scattered sequence of length l+1 exists somewhere; at most one
    // of its members can be within m of each entry, so one is distant.
    if (global_scatter_max == tuple_len + 1) return true;
    // No C elements at all.
    if (global_scatter_max == 0) return false;

    // Case 2: a maximal scattered sequence fits inside V^m(a-bar): then every
    // C element lives inside V^{3m}(a-bar) and the ball answers directly.
    std::vector<Elem> near;
    for (Elem e : c.extension(ball)) {
        ExtDistance d = ExtDistance::infinity();
        for (Elem a : tuple) d = std::min(d, ball.gaifman(a, e));
        if (d <= m_radius) near.push_back(e);
    }
    if (max_scattered(ball, near, 2 * m_radius, global_scatter_max) == global_scatter_max) {
        for (Elem e : c.extension(ball)) {
            ExtDistance d = ExtDistance::infinity();
            for (Elem a : tuple) d = std::min(d, ball.gaifman(a, e));
            if (d > m_radius) return true;
        }
        return false;
    }

    // Case 3: the maximal sequence does not fit near a-bar, so some member of
    // it is already distant.
    return true;
}

TypeId merge_local(TheoryEngine& eng, const Structure& m, std::span<const Elem> tuple, Elem b,
                   int n, std::uint64_t m_radius) {
    ExtDistance d = ExtDistance::infinity();
    for (Elem a : tuple) d = std::min(d, m.gaifman(a, b));

    std::vector<Elem> extended(tuple.begin(), tuple.end());
    extended.push_back(b);

    if (d <= 2 * m_radius + 1) {
        // V^m(a-bar^b) lies inside V^{3m+1}(a-bar); read the answer there.
        Structure big = neighborhood(m, tuple, 3 * m_radius + 1);
        Structure inner = neighborhood(big, extended, m_radius);
        return eng.thn(inner, extended, n);
    }
    // Distant case: no relation tuple crosses the gap, so the ball of the
    // union is the disjoint union of the balls.
    Structure left = neighborhood(m, tuple, m_radius);
    std::vector<Elem> bonly{b};
    Structure right = neighborhood(m, bonly, m_radius);
    Structure u = disjoint_union(left, right);
    return eng.thn(u, extended, n);
}

MinRadiusResult min_radius_search(TheoryEngine& eng, std::span<const LocalityInstance> corpus,
                                  int n, int depth, int k_budget) {
    // Radius-0 balls are degenerate (they already carry the atomic diagram of
    // the tuple); the search domain starts at 1, matching the printed k(0)=1.
    std::optional<DeterminationWitness> below;
    for (int k = 1; k <= k_budget; ++k) {
        DeterminationMap map;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto& inst = corpus[i];
            Structure ball = neighborhood(*inst.model, inst.tuple, static_cast<std::uint64_t>(k));
            TypeId src = eng.thn(ball, inst.tuple, depth);
            TypeId dst = eng.thn(*inst.model, inst.tuple, n);
            // Determination is within a model (the ball of an isolated vertex
            // can never count the rest of the structure), so keys are scoped
            // by the model fingerprint.
            map.add(fnv128(inst.model->fingerprint()).hex() + ":" +
                        eng.table().digest_of(src).hex(),
                    eng.table().digest_of(dst).hex(), "instance#" + std::to_string(i), i);
        }
        auto res = map.result();
        if (res.functional) return MinRadiusResult{k, std::move(below)};
        below = std::move(res.witness);
    }
    throw BudgetError("min_radius_search: no determining radius within budget");
}

DeterminationResult check_subclaim(DTheoryEngine& eng, std::span<const LocalityInstance> corpus,
                                   const RadiusSchedule& sched, int n, ExecMode mode) {
    if (n > sched.max_n()) throw DomainError("check_subclaim: schedule too short");
    // as_distorted_sum specs are shared per distinct model
    std::vector<DistortedSumSpec> specs;
    std::vector<std::size_t> spec_of(corpus.size());
    {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const std::string& fp = corpus[i].model->fingerprint();
            auto it = seen.find(fp);
            if (it == seen.end()) {
                seen.emplace(fp, specs.size());
                spec_of[i] = specs.size();
                specs.push_back(as_distorted_sum(*corpus[i].model));
            } else {
                spec_of[i] = it->second;
            }
        }
    }

    TheoryEngine& theory = eng.dsum().theory();
    DeterminationMap map = sweep_determination(
        mode, corpus.size(), [&](DeterminationMap& acc, std::size_t i) {
            const auto& inst = corpus[i];
            Structure ball = neighborhood(*inst.model, inst.tuple, sched.r(n));
            TypeId src = theory.thn(ball, inst.tuple, sched.b(n));
            DTheoryId dst = eng.dtheory(specs[spec_of[i]], sched, n, n, inst.tuple);
            acc.add("SC(" + fnv128(inst.model->fingerprint()).hex() + ";n=" + std::to_string(n) +
                        ";" + theory.table().digest_of(src).hex() + ")",
                    eng.digest_of(dst).hex(), "instance#" + std::to_string(i), i);
        });
    return map.result();
}

GaifmanParams gaifman_params(int n, int m, GaifmanVariant variant) {
    if (n < 1) throw DomainError("gaifman_params: depth must be >= 1 (no quantifiers otherwise)");
    if (m < 0) throw DomainError("gaifman_params: negative free-variable count");
    auto pow = [](std::int64_t base, int e) {
        std::int64_t v = 1;
        while (e-- > 0) v *= base;
        return v;
    };
    GaifmanParams p;
    p.variant = variant;
    p.s = m + n;
    if (variant == GaifmanVariant::Improved) {
        p.r = 3 * pow(4, n - 1);
        p.t = p.r;
    } else {
        p.r = pow(7, n - 1);
        p.t = (pow(7, n) - 1) / 2;
    }
    return p;
}

bool eval_basic_local(const Structure& m, const BasicLocalSentence& sentence) {
    if (!sentence.psi) throw DomainError("basic local sentence: missing formula");
    std::vector<Elem> hits;
    for (Elem v : m.universe()) {
        std::vector<Elem> t{v};
        if (eval_formula(m, *sentence.psi, t)) hits.push_back(v);
    }
    return max_scattered(m, hits, 2 * sentence.radius, sentence.count) >= sentence.count;
}

namespace {

// Rewrites psi (one free variable x0, V^r-bounded quantifiers) into an
// unrelativized formula: x0 becomes `root`, each bounded quantifier becomes
// an ordinary one guarded by a distance formula to the root.
FormulaPtr unrelativize(const Signature& sig, const Formula& f,
                        const std::vector<int>& var_map, int root, int next_var) {
    switch (f.kind()) {
        case Formula::Kind::Rel: {
            std::vector<int> vars;
            for (int v : f.vars()) vars.push_back(var_map[static_cast<std::size_t>(v)]);
            return Formula::rel(f.symbol(), std::move(vars));
        }
        case Formula::Kind::Eq:
            return Formula::eq(var_map[static_cast<std::size_t>(f.vars()[0])],
                               var_map[static_cast<std::size_t>(f.vars()[1])]);
        case Formula::Kind::Not:
            return Formula::negation(unrelativize(sig, *f.kids()[0], var_map, root, next_var));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f.kids())
                kids.push_back(unrelativize(sig, *k, var_map, root, next_var));
            return f.kind() == Formula::Kind::And ? Formula::conj(std::move(kids))
                                                  : Formula::disj(std::move(kids));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            int fresh = next_var;
            std::vector<int> inner = var_map;
            if (static_cast<std::size_t>(f.qvar()) >= inner.size())
                inner.resize(static_cast<std::size_t>(f.qvar()) + 1, -1);
            inner[static_cast<std::size_t>(f.qvar())] = fresh;
            FormulaPtr body = unrelativize(sig, *f.kids()[0], inner, root, next_var + 1);
            if (f.local_radius() >= 0) {
                FormulaPtr guard = distance_le_general(
                    sig, static_cast<std::uint64_t>(f.local_radius()), fresh, root, next_var + 1);
                if (f.kind() == Formula::Kind::Exists)
                    return Formula::exists(fresh,
                                           Formula::conj({std::move(guard), std::move(body)}));
                return Formula::forall(
                    fresh, Formula::disj({Formula::negation(std::move(guard)), std::move(body)}));
            }
            return f.kind() == Formula::Kind::Exists ? Formula::exists(fresh, std::move(body))
                                                     : Formula::forall(fresh, std::move(body));
        }
    }
    throw DomainError("unrelativize: bad node");
}

}  // namespace

FormulaPtr expand_basic_local(const Signature& sig, const BasicLocalSentence& sentence) {
    const int s = sentence.count;
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < s; ++i) {
        std::vector<int> var_map{i};  // x0 of psi -> v_i
        parts.push_back(unrelativize(sig, *sentence.psi, var_map, i, s));
    }
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            parts.push_back(Formula::negation(
                distance_le_general(sig, 2 * sentence.radius, i, j, s)));
    FormulaPtr body = Formula::conj(std::move(parts));
    for (int v = s - 1; v >= 0; --v) body = Formula::exists(v, std::move(body));
    return body;
}

}  // namespace fmtk
