#include "fmtk/signature.hpp"

#include <algorithm>

namespace fmtk {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end(),
              [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity < 1)
            throw DomainError("signature: arity of '" + symbols_[i].name + "' must be >= 1");
        if (i > 0 && symbols_[i].name == symbols_[i - 1].name)
            throw DomainError("signature: duplicate symbol '" + symbols_[i].name + "'");
        if (symbols_[i].name.find_first_of(";|()[]{},") != std::string::npos)
            throw DomainError("signature: symbol name contains reserved character");
    }
}

int Signature::index_of(const std::string& name) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const Symbol& s, const std::string& n) { return s.name < n; });
    if (it == symbols_.end() || it->name != name) return -1;
    return static_cast<int>(it - symbols_.begin());
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

std::string Signature::serial() const {
    std::string out = "sig[";
    for (const auto& s : symbols_) {
        out += s.name;
        out += '/';
        out += std::to_string(s.arity);
        out += ';';
    }
    out += ']';
    return out;
}

}  // namespace fmtk
