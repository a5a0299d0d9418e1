#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fmtk/structure.hpp"
#include "fmtk/theory.hpp"

namespace fmtk {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// First-order formula over a relational signature. Variables are indices;
// the evaluator binds 0..l-1 to the argument tuple and quantifiers bind
// successive indices. A quantifier may carry a locality bound: the variable
// then ranges over V^radius(x-bar) of the formula's root free variables.
class Formula {
  public:
    enum class Kind { Rel, Eq, Not, And, Or, Exists, Forall };

    Kind kind() const { return kind_; }
    const std::string& symbol() const { return sym_; }
    const std::vector<int>& vars() const { return vars_; }
    const std::vector<FormulaPtr>& kids() const { return kids_; }
    int qvar() const { return qvar_; }
    int local_radius() const { return local_radius_; }  // -1 when unbounded

    static FormulaPtr rel(std::string sym, std::vector<int> vars);
    static FormulaPtr eq(int a, int b);
    static FormulaPtr negation(FormulaPtr f);
    static FormulaPtr conj(std::vector<FormulaPtr> kids);   // empty = true
    static FormulaPtr disj(std::vector<FormulaPtr> kids);   // empty = false
    static FormulaPtr exists(int qvar, FormulaPtr body, int local_radius = -1);
    static FormulaPtr forall(int qvar, FormulaPtr body, int local_radius = -1);
    static FormulaPtr truth() { return conj({}); }
    static FormulaPtr falsity() { return disj({}); }

    // Depth in the quantifier-nesting sense: 0 = quantifier free,
    // n+1 = boolean combination of +-exists over depth-<=n matrices.
    int depth() const { return depth_; }
    int max_var() const { return max_var_; }

    std::string str() const;

  private:
    Formula() = default;

    Kind kind_ = Kind::And;
    std::string sym_;
    std::vector<int> vars_;
    std::vector<FormulaPtr> kids_;
    int qvar_ = -1;
    int local_radius_ = -1;
    int depth_ = 0;
    int max_var_ = -1;
};

// Tarskian truth of f at the tuple; quantifiers with a locality bound range
// over the Gaifman ball of the root free variables (Def of local formulas).
bool eval_formula(const Structure& m, const Formula& f, std::span<const Elem> tuple);

// Hintikka-style characteristic formula of an interned type: depth 0 is the
// full atomic diagram over the given signature, depth n+1 the conjunction of
// exists-child formulas plus the forall-disjunction. Requires all parameters
// in-model. Satisfies: eval(M, phi, a-bar) iff th^n(M, a-bar) == t.
FormulaPtr characteristic_formula(const TheoryEngine& eng, TypeId t, const Signature& sig);

}  // namespace fmtk
