#include "fmtk/dsum.hpp"

#include <algorithm>

namespace fmtk {

DistortedSumSpec::DistortedSumSpec(Structure index, MetricIndex metric, Structure global,
                                   std::vector<Elem> h_points)
    : index_(std::move(index)),
      metric_(std::move(metric)),
      global_(std::move(global)),
      h_(std::move(h_points)) {
    if (metric_.points() != index_.universe())
        throw DomainError("dsum: metric points must equal the index universe");
    if (h_.size() != static_cast<std::size_t>(global_.size()))
        throw DomainError("dsum: h must be total on the global universe");
    for (Elem t : h_)
        if (!index_.contains(t)) throw DomainError("dsum: h value outside the index");
    for (std::size_t i = 0; i < h_.size(); ++i) {
        Elem a = global_.universe()[i];
        if (index_.contains(a) && h_[i] != a)
            throw DomainError("dsum: shared element must satisfy h(t)=t");
    }
    fingerprint_ = "dsum{" + index_.fingerprint() + metric_.serial() + global_.fingerprint() + "h[";
    for (Elem t : h_) {
        fingerprint_ += std::to_string(t);
        fingerprint_ += ',';
    }
    fingerprint_ += "]}";
}

Elem DistortedSumSpec::h(Elem a) const {
    int li = global_.local_index(a);
    if (li < 0) throw DomainError("dsum: element not in the global universe");
    return h_[static_cast<std::size_t>(li)];
}

std::vector<Elem> DistortedSumSpec::h_tuple(std::span<const Elem> tuple) const {
    std::vector<Elem> out;
    out.reserve(tuple.size());
    for (Elem a : tuple) out.push_back(h(a));
    return out;
}

std::vector<Elem> DistortedSumSpec::block(Elem t) const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i] == t) out.push_back(global_.universe()[i]);
    return out;
}

std::vector<Elem> DistortedSumSpec::window_elements(Elem t) const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (metric_.dist(t, h_[i]) <= 1) out.push_back(global_.universe()[i]);
    return out;
}

Structure DistortedSumSpec::local_model(Elem t) const {
    return global_.induced(window_elements(t));
}

Elem DistortedSumSpec::resolve(Elem x) const {
    int li = global_.local_index(x);
    if (li >= 0) return h_[static_cast<std::size_t>(li)];
    if (index_.contains(x)) return x;
    throw DomainError("dsum: element neither in M nor in I");
}

ExtDistance DistortedSumSpec::dist(Elem x, Elem y) const {
    return metric_.dist(resolve(x), resolve(y));
}

void CompositionTable::add(const std::string& key, const std::string& value, TypeId value_id,
                           std::string prov, std::size_t index) {
    map_.add(key, value, std::move(prov), index);
    value_ids_.emplace(value, value_id);
}

void CompositionTable::merge(const CompositionTable& other) {
    map_.merge(other.map_);
    for (const auto& [v, id] : other.value_ids_) value_ids_.emplace(v, id);
}

std::optional<std::string> CompositionTable::lookup_serial(const std::string& key) const {
    const std::string* v = map_.lookup(key);
    if (!v) return std::nullopt;
    return *v;
}

TypeId CompositionTable::lookup_type(const std::string& key) const {
    const std::string* v = map_.lookup(key);
    if (!v) return kNoType;
    auto it = value_ids_.find(*v);
    return it == value_ids_.end() ? kNoType : it->second;
}

std::string CompositionTable::export_text() const {
    std::string out = "# composition table " + label_ + " depth=" + std::to_string(depth_) +
                      " len=" + std::to_string(len_) + "\n";
    for (const auto& [key, values] : map_.entries())
        for (const auto& [value, info] : values)
            out += key + " -> " + value + " #" + std::to_string(info.count) + "\n";
    return out;
}

VerifyOutcome verify_distorted_sum(TheoryEngine& eng, const DistortedSumSpec& spec, int max_len) {
    if (max_len < 0 || max_len > 4) throw BudgetError("verify_distorted_sum: max_len budget is 4");
    CompositionTable table("def-1.4", 0, max_len);
    const Structure& g = spec.global();
    const int m = g.size();
    std::size_t index = 0;

    std::vector<Elem> tuple;
    for (int len = 0; len <= max_len; ++len) {
        std::vector<int> odo(static_cast<std::size_t>(len), 0);
        if (len > 0 && m == 0) continue;
        while (true) {
            tuple.clear();
            for (int p : odo) tuple.push_back(g.universe()[static_cast<std::size_t>(p)]);

            std::string key = "K0(";
            key += eng.table().digest_of(eng.th0(spec.index(), spec.h_tuple(tuple))).hex();
            key += '|';
            for (Elem b : tuple) {
                Structure window = spec.local_model(spec.h(b));
                key += eng.table().digest_of(eng.th0(window, tuple)).hex();
                key += ',';
            }
            key += ')';

            TypeId value = eng.th0(g, tuple);
            std::string prov = "tuple=[";
            for (Elem b : tuple) {
                prov += std::to_string(b);
                prov += ',';
            }
            prov += ']';
            table.add(key, eng.table().digest_of(value).hex(), value, std::move(prov), index++);

            int c = len - 1;
            while (c >= 0 && odo[static_cast<std::size_t>(c)] == m - 1) {
                odo[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
            ++odo[static_cast<std::size_t>(c)];
        }
    }

    VerifyOutcome out;
    auto res = table.check();
    out.ok = res.functional;
    out.witness = res.witness;
    out.table = std::move(table);
    return out;
}

}  // namespace fmtk
