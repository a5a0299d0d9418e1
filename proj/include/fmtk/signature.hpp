#pragma once

#include <string>
#include <vector>

#include "fmtk/errors.hpp"

namespace fmtk {

struct Symbol {
    std::string name;
    int arity = 1;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Finite relational signature: named symbols with arity >= 1.
// Symbols are kept sorted by name so every serialization is canonical.
class Signature {
  public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    // Index in sorted order, or -1.
    int index_of(const std::string& name) const;
    const Symbol& at(int idx) const { return symbols_[static_cast<std::size_t>(idx)]; }

    int max_arity() const;

    std::string serial() const;

    friend bool operator==(const Signature&, const Signature&) = default;

  private:
    std::vector<Symbol> symbols_;
};

}  // namespace fmtk
