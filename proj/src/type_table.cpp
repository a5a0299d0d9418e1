#include "fmtk/type_table.hpp"

#include <algorithm>
#include <functional>

namespace fmtk {

std::string Type0Data::serial() const {
    std::string out = "0(";
    out += std::to_string(params);
    out += ";m=";
    for (int i = 0; i < params; ++i) out += (in_mask >> i) & 1 ? '1' : '0';
    out += ";e=";
    for (int i = 0; i < params; ++i) {
        out += (eq[static_cast<std::size_t>(i)] < 0)
                   ? std::string("-")
                   : std::to_string(eq[static_cast<std::size_t>(i)]);
        out += ',';
    }
    for (const auto& r : rels) {
        out += ";r:";
        out += r.name;
        out += '/';
        out += std::to_string(r.arity);
        out += '{';
        for (const auto& t : r.true_tuples) {
            for (int p : t) {
                out += std::to_string(p);
                out += ',';
            }
            out += ';';
        }
        out += '}';
    }
    for (const auto& f : fams) {
        out += ";f:";
        out += f.name;
        out += '/';
        out += std::to_string(f.arity);
        out += '{';
        for (const auto& [t, digs] : f.entries) {
            for (int p : t) {
                out += std::to_string(p);
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
    if (dist) {
        out += ";d@";
        out += std::to_string(dist->bound);
        out += '{';
        for (std::uint64_t v : dist->vals) {
            out += std::to_string(v);
            out += ',';
        }
        out += '}';
    }
    out += ')';
    return out;
}

Type0Data Type0Data::project(std::span<const int> positions) const {
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (positions[i] >= positions[i + 1])
            throw DomainError("type0 project: positions must be strictly increasing");
    for (int p : positions)
        if (p < 0 || p >= params) throw DomainError("type0 project: position out of range");

    std::vector<int> back(static_cast<std::size_t>(params), -1);
    for (std::size_t i = 0; i < positions.size(); ++i)
        back[static_cast<std::size_t>(positions[i])] = static_cast<int>(i);

    Type0Data out;
    out.params = static_cast<int>(positions.size());
    out.eq.assign(positions.size(), -1);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        int p = positions[i];
        if (!((in_mask >> p) & 1)) continue;
        out.in_mask |= (1u << i);
        // least selected position sharing the original equality class
        int rep = eq[static_cast<std::size_t>(p)];
        int least = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j)
            if (((in_mask >> positions[j]) & 1) &&
                eq[static_cast<std::size_t>(positions[j])] == rep) {
                least = static_cast<int>(j);
                break;
            }
        out.eq[i] = least;
    }

    auto remap = [&](const std::vector<int>& t, std::vector<int>& mapped) {
        mapped.clear();
        for (int p : t) {
            if (back[static_cast<std::size_t>(p)] < 0) return false;
            mapped.push_back(back[static_cast<std::size_t>(p)]);
        }
        return true;
    };

    std::vector<int> mapped;
    for (const auto& r : rels) {
        Type0Data::RelBlock nb{r.name, r.arity, {}};
        for (const auto& t : r.true_tuples)
            if (remap(t, mapped)) nb.true_tuples.push_back(mapped);
        if (!nb.true_tuples.empty()) {
            std::sort(nb.true_tuples.begin(), nb.true_tuples.end());
            out.rels.push_back(std::move(nb));
        }
    }
    for (const auto& f : fams) {
        Type0Data::FamBlock nb{f.name, f.arity, {}};
        for (const auto& [t, digs] : f.entries)
            if (remap(t, mapped)) nb.entries.emplace_back(mapped, digs);
        if (!nb.entries.empty()) {
            std::sort(nb.entries.begin(), nb.entries.end());
            out.fams.push_back(std::move(nb));
        }
    }
    if (dist) {
        Type0Data::DistBlock db{dist->bound, {}};
        // original vals are (i,j) lex over in-pairs; rebuild for selected pairs
        std::size_t idx = 0;
        std::vector<std::vector<std::uint64_t>> full(
            static_cast<std::size_t>(params),
            std::vector<std::uint64_t>(static_cast<std::size_t>(params), 0));
        for (int i = 0; i < params; ++i)
            for (int j = i + 1; j < params; ++j)
                if (((in_mask >> i) & 1) && ((in_mask >> j) & 1)) {
                    full[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        dist->vals[idx++];
                }
        for (std::size_t a = 0; a < positions.size(); ++a)
            for (std::size_t b = a + 1; b < positions.size(); ++b)
                if (((out.in_mask >> a) & 1) && ((out.in_mask >> b) & 1))
                    db.vals.push_back(full[static_cast<std::size_t>(positions[a])]
                                          [static_cast<std::size_t>(positions[b])]);
        if (!db.vals.empty()) out.dist = std::move(db);
    }
    return out;
}

TypeId TypeTable::intern_type0(Type0Data data) {
    Node node;
    node.depth = 0;
    node.params = data.params;
    node.shallow = data.serial();
    node.digest = fnv128(node.shallow);
    node.t0 = std::make_shared<const Type0Data>(std::move(data));
    std::string key = node.shallow;
    return intern_key(std::move(key), std::move(node));
}

TypeId TypeTable::intern_node(int depth, int params, std::vector<TypeId> children) {
    if (depth < 1) throw DomainError("intern_node: depth must be >= 1");
    std::vector<std::pair<Digest, TypeId>> byd;
    byd.reserve(children.size());
    for (TypeId c : children) {
        const Node& cn = node(c);
        if (cn.depth != depth - 1 || cn.params != params + 1)
            throw DomainError("intern_node: child depth/params mismatch");
        byd.emplace_back(cn.digest, c);
    }
    std::sort(byd.begin(), byd.end());
    byd.erase(std::unique(byd.begin(), byd.end()), byd.end());

    Node n;
    n.depth = depth;
    n.params = params;
    n.shallow = std::to_string(depth);
    n.shallow += '(';
    n.shallow += std::to_string(params);
    n.shallow += ';';
    n.children.reserve(byd.size());
    for (const auto& [d, id] : byd) {
        n.shallow += d.hex();
        n.shallow += ',';
        n.children.push_back(id);
    }
    n.shallow += ')';
    n.digest = fnv128(n.shallow);
    std::string key = n.shallow;
    return intern_key(std::move(key), std::move(n));
}

TypeId TypeTable::intern_key(std::string key, Node node) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_key_.find(std::string_view(key));
    if (it != by_key_.end()) return it->second;
    if (nodes_.size() >= max_nodes_) throw BudgetError("type table: max interned nodes exceeded");
    TypeId id = static_cast<TypeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    by_key_.emplace(std::string_view(nodes_.back().shallow), id);
    return id;
}

const TypeTable::Node& TypeTable::node(TypeId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.at(id);
}

std::size_t TypeTable::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.size();
}

std::string TypeTable::full_serial(TypeId id, std::size_t max_bytes) const {
    // Memoized per call; shared subtrees still expand in the parent, so the
    // output grows with depth. Intended for small types (CLI, golden files).
    std::unordered_map<TypeId, std::string> memo;
    std::size_t emitted = 0;
    std::function<const std::string&(TypeId)> rec = [&](TypeId t) -> const std::string& {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        const Node& n = node(t);
        std::string out;
        if (n.depth == 0) {
            out = "T";
            out += n.shallow;
        } else {
            std::vector<std::string> kids;
            kids.reserve(n.children.size());
            for (TypeId c : n.children) kids.push_back(rec(c));
            std::sort(kids.begin(), kids.end());
            out = "T";
            out += std::to_string(n.depth);
            out += '(';
            out += std::to_string(n.params);
            out += ';';
            for (const auto& k : kids) {
                out += '#';
                out += std::to_string(k.size());
                out += ':';
                out += k;
            }
            out += ')';
        }
        emitted += out.size();
        if (emitted > max_bytes) throw BudgetError("full_serial: output exceeds byte budget");
        return memo.emplace(t, std::move(out)).first->second;
    };
    return rec(id);
}

}  // namespace fmtk
