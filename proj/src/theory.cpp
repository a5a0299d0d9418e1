#include "fmtk/theory.hpp"

#include <algorithm>

namespace fmtk {

namespace {
constexpr int kOutLocal = 63;  // canonical local code for entries outside the model
}

std::uint32_t TheoryEngine::register_structure(const Structure& m) {
    std::lock_guard<std::mutex> lock(reg_mu_);
    auto it = registry_.find(m.fingerprint());
    if (it != registry_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(registry_.size());
    registry_.emplace(m.fingerprint(), id);
    return id;
}

bool TheoryEngine::pack_tuple(const Structure& m, std::span<const Elem> tuple,
                              std::uint64_t& out) const {
    if (tuple.size() > 10) return false;
    out = 0;
    for (Elem e : tuple) {
        int li = m.local_index(e);
        out = (out << 6) | static_cast<std::uint64_t>(li < 0 ? kOutLocal : li);
    }
    return true;
}

TypeId TheoryEngine::th0_locals(const Structure& m, std::span<const int> locals) {
    Type0Data d;
    d.params = static_cast<int>(locals.size());
    d.eq.assign(locals.size(), -1);
    for (std::size_t i = 0; i < locals.size(); ++i) {
        if (locals[i] == kOutLocal) continue;
        d.in_mask |= (1u << i);
        for (std::size_t j = 0; j <= i; ++j)
            if (locals[j] == locals[i]) {
                d.eq[i] = static_cast<int>(j);
                break;
            }
    }

    const int l = d.params;
    std::vector<int> pos;
    std::vector<Elem> elems;
    for (std::size_t s = 0; s < m.sig().size(); ++s) {
        const Symbol& sym = m.sig().at(static_cast<int>(s));
        const int k = sym.arity;
        Type0Data::RelBlock block{sym.name, k, {}};
        if (l == 0) continue;  // no position tuples
        // odometer over position tuples, keeping only all-in-model positions
        pos.assign(static_cast<std::size_t>(k), 0);
        while (true) {
            bool allin = true;
            for (int p : pos)
                if (locals[static_cast<std::size_t>(p)] == kOutLocal) {
                    allin = false;
                    break;
                }
            if (allin) {
                elems.clear();
                for (int p : pos)
                    elems.push_back(m.universe()[static_cast<std::size_t>(
                        locals[static_cast<std::size_t>(p)])]);
                if (m.holds(static_cast<int>(s), elems)) block.true_tuples.push_back(pos);
            }
            int c = k - 1;
            while (c >= 0 && pos[static_cast<std::size_t>(c)] == l - 1) {
                pos[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0 || l == 0) break;
            ++pos[static_cast<std::size_t>(c)];
        }
        if (!block.true_tuples.empty()) d.rels.push_back(std::move(block));
    }

    for (const auto& fam : m.families()) {
        if (l == 0) break;
        Type0Data::FamBlock block{fam.name, fam.arity, {}};
        pos.assign(static_cast<std::size_t>(fam.arity), 0);
        while (true) {
            bool allin = true;
            for (int p : pos)
                if (locals[static_cast<std::size_t>(p)] == kOutLocal) {
                    allin = false;
                    break;
                }
            if (allin) {
                elems.clear();
                for (int p : pos)
                    elems.push_back(m.universe()[static_cast<std::size_t>(
                        locals[static_cast<std::size_t>(p)])]);
                if (const auto* digs = fam.lookup(elems); digs && !digs->empty())
                    block.entries.emplace_back(pos, *digs);
            }
            int c = fam.arity - 1;
            while (c >= 0 && pos[static_cast<std::size_t>(c)] == l - 1) {
                pos[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0 || l == 0) break;
            ++pos[static_cast<std::size_t>(c)];
        }
        if (!block.entries.empty()) d.fams.push_back(std::move(block));
    }

    if (m.dist_annotation()) {
        Type0Data::DistBlock db{m.dist_annotation()->bound, {}};
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                if (locals[static_cast<std::size_t>(i)] != kOutLocal &&
                    locals[static_cast<std::size_t>(j)] != kOutLocal)
                    db.vals.push_back(m.dist_annotation()->at(
                        locals[static_cast<std::size_t>(i)], locals[static_cast<std::size_t>(j)],
                        m.size()));
        if (!db.vals.empty()) d.dist = std::move(db);
    }

    return table_.intern_type0(std::move(d));
}

TypeId TheoryEngine::thn_packed(const Structure& m, std::uint32_t fp, std::vector<int>& locals,
                                int n) {
    std::uint64_t packed = 0;
    for (int li : locals) packed = (packed << 6) | static_cast<std::uint64_t>(li);
    MemoKey key{fp, static_cast<std::uint16_t>(n), static_cast<std::uint16_t>(locals.size()),
                packed};
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }

    TypeId out;
    if (n == 0) {
        out = th0_locals(m, locals);
    } else {
        std::vector<TypeId> children;
        children.reserve(static_cast<std::size_t>(m.size()));
        locals.push_back(0);
        for (int b = 0; b < m.size(); ++b) {
            locals.back() = b;
            children.push_back(thn_packed(m, fp, locals, n - 1));
        }
        locals.pop_back();
        out = table_.intern_node(n, static_cast<int>(locals.size()), std::move(children));
    }

    std::lock_guard<std::mutex> lock(memo_mu_);
    if (memo_.size() >= budget_.max_memo_entries)
        throw BudgetError("theory memo: max entries exceeded");
    memo_.emplace(key, out);
    return out;
}

TypeId TheoryEngine::th0(const Structure& m, std::span<const Elem> tuple) {
    return thn(m, tuple, 0);
}

TypeId TheoryEngine::thn(const Structure& m, std::span<const Elem> tuple, int n) {
    if (n < 0 || n > budget_.max_depth) throw BudgetError("thn: depth out of budget");
    if (static_cast<std::size_t>(m.size()) > budget_.max_universe)
        throw BudgetError("thn: universe out of budget");
    if (tuple.size() + static_cast<std::size_t>(n) > 10)
        throw BudgetError("thn: tuple length plus depth exceeds packing limit (10)");
    std::uint32_t fp = register_structure(m);
    std::vector<int> locals;
    locals.reserve(tuple.size() + static_cast<std::size_t>(n));
    for (Elem e : tuple) {
        int li = m.local_index(e);
        locals.push_back(li < 0 ? kOutLocal : li);
    }
    return thn_packed(m, fp, locals, n);
}

TypeId TheoryEngine::reduce_depth(TypeId t, int target_depth) {
    const auto& n = table_.node(t);
    if (target_depth < 0 || target_depth > n.depth)
        throw DomainError("reduce_depth: target depth out of range");
    if (target_depth == n.depth) return t;
    if (target_depth == 0) {
        // Walk one chain down to a depth-0 leaf, then project away the
        // appended parameters. Any chain yields the same projection.
        TypeId cur = t;
        int appended = 0;
        while (table_.node(cur).depth > 0) {
            const auto& cn = table_.node(cur);
            if (cn.children.empty()) {
                // Empty model: all parameters are outside it.
                Type0Data d;
                d.params = n.params;
                d.eq.assign(static_cast<std::size_t>(n.params), -1);
                return table_.intern_type0(std::move(d));
            }
            cur = cn.children.front();
            ++appended;
        }
        std::vector<int> keep(static_cast<std::size_t>(n.params));
        for (int i = 0; i < n.params; ++i) keep[static_cast<std::size_t>(i)] = i;
        Type0Data projected = table_.node(cur).t0->project(keep);
        return table_.intern_type0(std::move(projected));
    }
    std::vector<TypeId> children;
    children.reserve(n.children.size());
    for (TypeId c : n.children) children.push_back(reduce_depth(c, target_depth - 1));
    return table_.intern_node(target_depth, n.params, std::move(children));
}

TypeId TheoryEngine::project_params(const Structure& m, std::span<const Elem> tuple, int n,
                                    std::span<const int> positions) {
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (positions[i] >= positions[i + 1])
            throw DomainError("project_params: positions must be strictly increasing");
    std::vector<Elem> sub;
    for (int p : positions) {
        if (p < 0 || static_cast<std::size_t>(p) >= tuple.size())
            throw DomainError("project_params: position out of range");
        sub.push_back(tuple[static_cast<std::size_t>(p)]);
    }
    return thn(m, sub, n);
}

void TheoryEngine::clear_memo() {
    std::lock_guard<std::mutex> lock(memo_mu_);
    memo_.clear();
}

std::size_t TheoryEngine::memo_size() const {
    std::lock_guard<std::mutex> lock(memo_mu_);
    return memo_.size();
}

void TheoryEngine::trim_memo(std::size_t max_entries) {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (memo_.size() > max_entries) {
        memo_.clear();
        memo_.rehash(0);
    }
}

TypedTuple compute_type(TheoryEngine& eng, StructurePtr model, std::vector<Elem> tuple, int n) {
    TypedTuple out;
    out.id = eng.thn(*model, tuple, n);
    out.model = std::move(model);
    out.tuple = std::move(tuple);
    out.depth = n;
    return out;
}

TypedTuple project_type(TheoryEngine& eng, const TypedTuple& t, std::span<const int> positions) {
    if (!t.model)
        throw UnsupportedError("project_params: type value is detached from its model");
    TypedTuple out;
    out.id = eng.project_params(*t.model, t.tuple, t.depth, positions);
    out.model = t.model;
    for (int p : positions) out.tuple.push_back(t.tuple[static_cast<std::size_t>(p)]);
    out.depth = t.depth;
    return out;
}

}  // namespace fmtk
