#pragma once

#include <cstdint>
#include <optional>

#include "fmtk/dtheory.hpp"
#include "fmtk/formula.hpp"

namespace fmtk {

// A model with its Gaifman distance viewed as a distorted sum: the index is
// the model itself, every block is a singleton, h is the identity.
DistortedSumSpec as_distorted_sum(const Structure& m);

// Depth sufficient to express d(a,b) <= 2^n and d(a,b) > 2^n when the
// maximal arity is k: n + k - 2. Distance is degenerate below arity 2.
int distance_depth(int max_arity, int n);

// Formula for d(x0,x1) <= threshold / > threshold. The public operation
// accepts powers of two (matching the printed bound); arbitrary thresholds
// compose via distance_le_general.
enum class DistCmp { LessEq, Greater };
FormulaPtr distance_formula(const Signature& sig, std::uint64_t threshold, DistCmp cmp);
FormulaPtr distance_le_general(const Signature& sig, std::uint64_t threshold, int x, int y,
                               int next_var);

// A definable subset of a structure: a unary predicate or a one-free-variable
// formula; extension computed against whichever structure is supplied.
class DefinableSet {
  public:
    static DefinableSet predicate(std::string name);
    static DefinableSet formula(FormulaPtr phi);

    std::vector<Elem> extension(const Structure& m) const;
    bool member(const Structure& m, Elem e) const;
    int formula_depth() const;
    std::string describe() const;

  private:
    std::string pred_;
    FormulaPtr phi_;
};

// Largest k <= cap admitting k elements of C pairwise at distance > 2m.
// Exact backtracking over the candidate set.
int scattered_max(const Structure& m, const DefinableSet& c, std::uint64_t m_radius, int cap);

// Exhaustive oracle: does some e in C satisfy d(a-bar, e) > m?
bool distant_exists_brute(const Structure& m, std::span<const Elem> tuple, const DefinableSet& c,
                          std::uint64_t m_radius);

// The three-case local decision procedure. `ball` must be V^{3m}(a-bar);
// `global_scatter_max` is scattered_max(M, C, m, l+1) where l = lg(a-bar) --
// the single global fact the procedure consumes. Everything else is read
// from the ball. Contract: equals distant_exists_brute on the full structure.
bool distant_exists_local(const Structure& ball, std::span<const Elem> tuple,
                          const DefinableSet& c, std::uint64_t m_radius, int tuple_len,
                          int global_scatter_max);

// Fact about merging local theories: th^n(V^m(a-bar^b); a-bar^b) computed
// either inside V^{3m+1}(a-bar) (when d(a-bar,b) <= 2m+1) or by assembling
// the disjoint pieces V^m(a-bar) and V^m(b). Equals the direct computation.
TypeId merge_local(TheoryEngine& eng, const Structure& m, std::span<const Elem> tuple, Elem b,
                   int n, std::uint64_t m_radius);

// Corpus instance for radius searches.
struct LocalityInstance {
    StructurePtr model;
    std::vector<Elem> tuple;
};

struct MinRadiusResult {
    int k = 0;
    std::optional<DeterminationWitness> collision_below;  // at k-1 (absent when k == 1)
};

// Smallest radius k >= 1 such that th^{depth}(V^k(a-bar);a-bar) determines
// th^n(M;a-bar) across the corpus. A corpus-relative lower-bound probe of
// k(n), never the true k(n).
MinRadiusResult min_radius_search(TheoryEngine& eng, std::span<const LocalityInstance> corpus,
                                  int n, int depth, int k_budget = 16);

// Subclaim of the radius bound: th^{beta(n)}(V^{r(n)}(a-bar);a-bar)
// determines DTh^n(I^n; a-bar) over specs built by as_distorted_sum.
DeterminationResult check_subclaim(DTheoryEngine& eng,
                                   std::span<const LocalityInstance> corpus,
                                   const RadiusSchedule& sched, int n,
                                   ExecMode mode = ExecMode::Serial);

// Normal-form parameter bounds.
enum class GaifmanVariant { Classical, Improved };
struct GaifmanParams {
    std::int64_t r = 0, s = 0, t = 0;
    GaifmanVariant variant = GaifmanVariant::Improved;
};
GaifmanParams gaifman_params(int n, int m, GaifmanVariant variant);

// Basic local sentence: s elements pairwise at distance > 2r, each satisfying
// the r-local one-variable formula psi.
struct BasicLocalSentence {
    int count = 1;           // s
    std::uint64_t radius = 1;  // r
    FormulaPtr psi;          // one free variable x0; quantifiers V^r-bounded
};
bool eval_basic_local(const Structure& m, const BasicLocalSentence& sentence);

// Oracle route: the same sentence expanded into one unrelativized first-order
// sentence (balls via distance formulas) evaluated directly.
FormulaPtr expand_basic_local(const Signature& sig, const BasicLocalSentence& sentence);

}  // namespace fmtk
