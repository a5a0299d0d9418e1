#pragma once

#include <stdexcept>
#include <string>

namespace fmtk {

// Raised when an input violates an operation's precondition.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation would exceed an explicit resource budget
// (interned nodes, universe size, corpus size, search radius, ...).
// Blowup here is non-elementary, so it must fail loudly instead of hanging.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation needs a live model handle that is not available
// (e.g. projecting a detached type value).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
    std::size_t max_interned_nodes = 50'000'000;
    std::size_t max_memo_entries   = 80'000'000;
    std::size_t max_universe       = 64;
    int         max_depth          = 16;
    std::size_t max_corpus         = 4'000'000;
};

}  // namespace fmtk
