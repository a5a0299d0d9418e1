#include "fmtk/ef_game.hpp"

#include <algorithm>

namespace fmtk {

bool atomic_equivalent(const Structure& a, std::span<const Elem> ta, const Structure& b,
                       std::span<const Elem> tb) {
    if (ta.size() != tb.size()) return false;
    if (!(a.sig() == b.sig())) return false;
    const std::size_t l = ta.size();

    for (std::size_t i = 0; i < l; ++i)
        if (a.contains(ta[i]) != b.contains(tb[i])) return false;

    for (std::size_t i = 0; i < l; ++i) {
        if (!a.contains(ta[i])) continue;
        for (std::size_t j = i + 1; j < l; ++j) {
            if (!a.contains(ta[j])) continue;
            if ((ta[i] == ta[j]) != (tb[i] == tb[j])) return false;
        }
    }

    std::vector<Elem> ea, eb;
    for (std::size_t s = 0; s < a.sig().size(); ++s) {
        const int k = a.sig().at(static_cast<int>(s)).arity;
        if (l == 0) continue;
        std::vector<int> pos(static_cast<std::size_t>(k), 0);
        while (true) {
            bool allin = true;
            for (int p : pos)
                if (!a.contains(ta[static_cast<std::size_t>(p)])) {
                    allin = false;
                    break;
                }
            if (allin) {
                ea.clear();
                eb.clear();
                for (int p : pos) {
                    ea.push_back(ta[static_cast<std::size_t>(p)]);
                    eb.push_back(tb[static_cast<std::size_t>(p)]);
                }
                if (a.holds(static_cast<int>(s), ea) != b.holds(static_cast<int>(s), eb))
                    return false;
            }
            int c = k - 1;
            while (c >= 0 && pos[static_cast<std::size_t>(c)] == static_cast<int>(l) - 1) {
                pos[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
            ++pos[static_cast<std::size_t>(c)];
        }
    }

    // Families and distance annotations (two-sorted models).
    if (a.families().size() != b.families().size()) return false;
    for (std::size_t f = 0; f < a.families().size(); ++f) {
        const auto& fa = a.families()[f];
        const auto& fb = b.families()[f];
        if (fa.name != fb.name || fa.arity != fb.arity) return false;
        if (l == 0) continue;
        std::vector<int> pos(static_cast<std::size_t>(fa.arity), 0);
        while (true) {
            bool allin = true;
            for (int p : pos)
                if (!a.contains(ta[static_cast<std::size_t>(p)])) {
                    allin = false;
                    break;
                }
            if (allin) {
                ea.clear();
                eb.clear();
                for (int p : pos) {
                    ea.push_back(ta[static_cast<std::size_t>(p)]);
                    eb.push_back(tb[static_cast<std::size_t>(p)]);
                }
                const auto* da = fa.lookup(ea);
                const auto* db = fb.lookup(eb);
                bool ha = da && !da->empty(), hb = db && !db->empty();
                if (ha != hb) return false;
                if (ha && *da != *db) return false;
            }
            int c = fa.arity - 1;
            while (c >= 0 && pos[static_cast<std::size_t>(c)] == static_cast<int>(l) - 1) {
                pos[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
            ++pos[static_cast<std::size_t>(c)];
        }
    }

    const auto& dista = a.dist_annotation();
    const auto& distb = b.dist_annotation();
    if (dista.has_value() != distb.has_value()) return false;
    if (dista) {
        if (dista->bound != distb->bound) return false;
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = i + 1; j < l; ++j) {
                if (!a.contains(ta[i]) || !a.contains(ta[j])) continue;
                std::uint64_t va = dista->at(a.local_index(ta[i]), a.local_index(ta[j]), a.size());
                std::uint64_t vb = distb->at(b.local_index(tb[i]), b.local_index(tb[j]), b.size());
                if (va != vb) return false;
            }
    }
    return true;
}

std::uint32_t EfMemo::structure_id(const Structure& s) {
    auto it = ids_.find(s.fingerprint());
    if (it != ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(ids_.size());
    ids_.emplace(s.fingerprint(), id);
    return id;
}

bool EfMemo::lookup(const Key& k, bool& out) const {
    auto it = memo_.find(k);
    if (it == memo_.end()) return false;
    out = it->second;
    return true;
}

void EfMemo::store(const Key& k, bool value) { memo_[k] = value; }

namespace {

std::uint64_t pack_side(const Structure& s, std::span<const Elem> t) {
    std::uint64_t code = 1;  // leading sentinel keeps lengths distinct
    for (Elem e : t) {
        int li = s.local_index(e);
        code = (code << 6) | static_cast<std::uint64_t>(li < 0 ? 63 : li);
    }
    return code;
}

bool ef_rec(const Structure& a, std::vector<Elem>& ta, const Structure& b, std::vector<Elem>& tb,
            int rounds, EfMemo* memo) {
    EfMemo::Key key{};
    if (memo) {
        key = EfMemo::Key{memo->structure_id(a), memo->structure_id(b),
                          static_cast<std::uint32_t>(rounds), pack_side(a, ta), pack_side(b, tb)};
        bool cached;
        if (memo->lookup(key, cached)) return cached;
    }

    bool result = atomic_equivalent(a, ta, b, tb);
    if (result && rounds > 0) {
        // Spoiler plays in A, Duplicator answers in B; then the other way.
        for (int side = 0; side < 2 && result; ++side) {
            const Structure& sa = side == 0 ? a : b;
            const Structure& sb = side == 0 ? b : a;
            std::vector<Elem>& va = side == 0 ? ta : tb;
            std::vector<Elem>& vb = side == 0 ? tb : ta;
            for (Elem move : sa.universe()) {
                va.push_back(move);
                vb.push_back(0);
                bool answered = false;
                for (Elem reply : sb.universe()) {
                    vb.back() = reply;
                    bool sub = side == 0 ? ef_rec(a, va, b, vb, rounds - 1, memo)
                                         : ef_rec(a, vb, b, va, rounds - 1, memo);
                    if (sub) {
                        answered = true;
                        break;
                    }
                }
                va.pop_back();
                vb.pop_back();
                if (!answered) {
                    result = false;
                    break;
                }
            }
        }
    }

    if (memo) memo->store(key, result);
    return result;
}

}  // namespace

bool ef_equivalent(const Structure& a, std::span<const Elem> ta, const Structure& b,
                   std::span<const Elem> tb, int rounds, EfMemo* memo) {
    if (ta.size() != tb.size()) throw DomainError("ef_equivalent: tuple length mismatch");
    if (ta.size() + static_cast<std::size_t>(rounds) > 10)
        throw BudgetError("ef_equivalent: position length exceeds packing limit");
    std::vector<Elem> va(ta.begin(), ta.end()), vb(tb.begin(), tb.end());
    return ef_rec(a, va, b, vb, rounds, memo);
}

}  // namespace fmtk
