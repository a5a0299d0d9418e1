#include "fmtk/formula.hpp"

#include <algorithm>

namespace fmtk {

namespace {
FormulaPtr make(Formula&& f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

// Out-of-line so the private constructor stays usable via friendship-free moves.
FormulaPtr Formula::rel(std::string sym, std::vector<int> vars) {
    Formula f;
    f.kind_ = Kind::Rel;
    f.sym_ = std::move(sym);
    f.vars_ = std::move(vars);
    for (int v : f.vars_) {
        if (v < 0) throw DomainError("formula: negative variable index");
        f.max_var_ = std::max(f.max_var_, v);
    }
    return make(std::move(f));
}

FormulaPtr Formula::eq(int a, int b) {
    Formula f;
    f.kind_ = Kind::Eq;
    f.vars_ = {a, b};
    if (a < 0 || b < 0) throw DomainError("formula: negative variable index");
    f.max_var_ = std::max(a, b);
    return make(std::move(f));
}

FormulaPtr Formula::negation(FormulaPtr g) {
    Formula f;
    f.kind_ = Kind::Not;
    f.depth_ = g->depth();
    f.max_var_ = g->max_var();
    f.kids_ = {std::move(g)};
    return make(std::move(f));
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> kids) {
    Formula f;
    f.kind_ = Kind::And;
    for (const auto& k : kids) {
        f.depth_ = std::max(f.depth_, k->depth());
        f.max_var_ = std::max(f.max_var_, k->max_var());
    }
    f.kids_ = std::move(kids);
    return make(std::move(f));
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> kids) {
    Formula f;
    f.kind_ = Kind::Or;
    for (const auto& k : kids) {
        f.depth_ = std::max(f.depth_, k->depth());
        f.max_var_ = std::max(f.max_var_, k->max_var());
    }
    f.kids_ = std::move(kids);
    return make(std::move(f));
}

FormulaPtr Formula::exists(int qvar, FormulaPtr body, int local_radius) {
    Formula f;
    f.kind_ = Kind::Exists;
    f.qvar_ = qvar;
    f.local_radius_ = local_radius;
    f.depth_ = body->depth() + 1;
    f.max_var_ = std::max(qvar, body->max_var());
    f.kids_ = {std::move(body)};
    return make(std::move(f));
}

FormulaPtr Formula::forall(int qvar, FormulaPtr body, int local_radius) {
    Formula f;
    f.kind_ = Kind::Forall;
    f.qvar_ = qvar;
    f.local_radius_ = local_radius;
    f.depth_ = body->depth() + 1;
    f.max_var_ = std::max(qvar, body->max_var());
    f.kids_ = {std::move(body)};
    return make(std::move(f));
}

std::string Formula::str() const {
    switch (kind_) {
        case Kind::Rel: {
            std::string s = sym_ + "(";
            for (std::size_t i = 0; i < vars_.size(); ++i)
                s += (i ? ",x" : "x") + std::to_string(vars_[i]);
            return s + ")";
        }
        case Kind::Eq:
            return "x" + std::to_string(vars_[0]) + "=x" + std::to_string(vars_[1]);
        case Kind::Not:
            return "!" + kids_[0]->str();
        case Kind::And: {
            if (kids_.empty()) return "true";
            std::string s = "(";
            for (std::size_t i = 0; i < kids_.size(); ++i) s += (i ? " & " : "") + kids_[i]->str();
            return s + ")";
        }
        case Kind::Or: {
            if (kids_.empty()) return "false";
            std::string s = "(";
            for (std::size_t i = 0; i < kids_.size(); ++i) s += (i ? " | " : "") + kids_[i]->str();
            return s + ")";
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::string s = kind_ == Kind::Exists ? "E" : "A";
            s += "x" + std::to_string(qvar_);
            if (local_radius_ >= 0) s += "@V" + std::to_string(local_radius_);
            return s + "." + kids_[0]->str();
        }
    }
    return "?";
}

namespace {

struct Evaluator {
    const Structure& m;
    std::size_t root_free;
    std::vector<Elem> env;
    // ball cache per radius, keyed by the fixed root assignment
    std::vector<std::pair<int, std::vector<Elem>>> balls;

    const std::vector<Elem>& domain(int radius) {
        if (radius < 0) {
            static const std::vector<Elem> kEmpty;
            return kEmpty;  // unused
        }
        for (const auto& [r, b] : balls)
            if (r == radius) return b;
        std::span<const Elem> roots(env.data(), root_free);
        balls.emplace_back(radius,
                           ball_elements(m, roots, static_cast<std::uint64_t>(radius)));
        return balls.back().second;
    }

    bool run(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Rel: {
                int sym = m.sig().index_of(f.symbol());
                if (sym < 0) throw DomainError("eval: unknown symbol " + f.symbol());
                std::vector<Elem> args;
                args.reserve(f.vars().size());
                for (int v : f.vars()) args.push_back(lookup(v));
                return m.holds(sym, args);
            }
            case Formula::Kind::Eq:
                return lookup(f.vars()[0]) == lookup(f.vars()[1]);
            case Formula::Kind::Not:
                return !run(*f.kids()[0]);
            case Formula::Kind::And:
                for (const auto& k : f.kids())
                    if (!run(*k)) return false;
                return true;
            case Formula::Kind::Or:
                for (const auto& k : f.kids())
                    if (run(*k)) return true;
                return false;
            case Formula::Kind::Exists:
            case Formula::Kind::Forall: {
                const bool want = f.kind() == Formula::Kind::Exists;
                if (f.qvar() != static_cast<int>(env.size()))
                    throw DomainError("eval: quantifier variable index must extend the tuple");
                const std::vector<Elem>& dom =
                    f.local_radius() >= 0 ? domain(f.local_radius()) : m.universe();
                env.push_back(0);
                bool found = false;
                for (Elem e : dom) {
                    env.back() = e;
                    if (run(*f.kids()[0]) == want) {
                        found = true;
                        break;
                    }
                }
                env.pop_back();
                return found == want;
            }
        }
        throw DomainError("eval: bad formula node");
    }

    Elem lookup(int v) {
        if (v < 0 || static_cast<std::size_t>(v) >= env.size())
            throw DomainError("eval: unbound free variable x" + std::to_string(v));
        return env[static_cast<std::size_t>(v)];
    }
};

}  // namespace

bool eval_formula(const Structure& m, const Formula& f, std::span<const Elem> tuple) {
    for (Elem e : tuple)
        if (!m.contains(e)) throw DomainError("eval: tuple element outside universe");
    Evaluator ev{m, tuple.size(), std::vector<Elem>(tuple.begin(), tuple.end()), {}};
    return ev.run(f);
}

namespace {

FormulaPtr characteristic_rec(const TypeTable& table, TypeId t, const Signature& sig) {
    const auto& node = table.node(t);
    if (node.depth == 0) {
        const Type0Data& d = *node.t0;
        if (!d.all_in())
            throw DomainError("characteristic_formula: parameters outside the model");
        std::vector<FormulaPtr> atoms;
        for (int i = 0; i < d.params; ++i)
            for (int j = i + 1; j < d.params; ++j) {
                bool same = d.eq[static_cast<std::size_t>(j)] ==
                            d.eq[static_cast<std::size_t>(i)];
                FormulaPtr a = Formula::eq(i, j);
                atoms.push_back(same ? a : Formula::negation(a));
            }
        for (const auto& sym : sig.symbols()) {
            if (d.params == 0) break;  // no atoms over an empty tuple
            const Type0Data::RelBlock* block = nullptr;
            for (const auto& r : d.rels)
                if (r.name == sym.name) block = &r;
            std::vector<int> pos(static_cast<std::size_t>(sym.arity), 0);
            while (true) {
                bool truth = block && std::binary_search(block->true_tuples.begin(),
                                                         block->true_tuples.end(), pos);
                FormulaPtr a = Formula::rel(sym.name, pos);
                atoms.push_back(truth ? a : Formula::negation(a));
                int c = sym.arity - 1;
                while (c >= 0 && pos[static_cast<std::size_t>(c)] == d.params - 1) {
                    pos[static_cast<std::size_t>(c)] = 0;
                    --c;
                }
                if (c < 0 || d.params == 0) break;
                ++pos[static_cast<std::size_t>(c)];
            }
        }
        return Formula::conj(std::move(atoms));
    }

    const int y = node.params;  // next free variable index
    std::vector<FormulaPtr> parts;
    std::vector<FormulaPtr> child_formulas;
    for (TypeId c : node.children) child_formulas.push_back(characteristic_rec(table, c, sig));
    for (const auto& cf : child_formulas) parts.push_back(Formula::exists(y, cf));
    parts.push_back(Formula::forall(y, Formula::disj(child_formulas)));
    return Formula::conj(std::move(parts));
}

}  // namespace

FormulaPtr characteristic_formula(const TheoryEngine& eng, TypeId t, const Signature& sig) {
    return characteristic_rec(eng.table(), t, sig);
}

}  // namespace fmtk
