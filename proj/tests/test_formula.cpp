#include <doctest.h>

#include "fmtk/enumerate.hpp"
#include "fmtk/formula.hpp"
#include "helpers.hpp"

using namespace fmtk;
using namespace fmtk::testutil;

TEST_CASE("eval basics") {
    Structure p4 = path_graph(4);
    std::vector<Elem> end{0};

    auto taut = Formula::eq(0, 0);
    CHECK(eval_formula(p4, *taut, end));

    // exists y E(x0,y) at an endpoint
    auto has_nb = Formula::exists(1, Formula::rel("E", {0, 1}));
    CHECK(has_nb->depth() == 1);
    CHECK(eval_formula(p4, *has_nb, end));

    // unbound variable
    auto bad = Formula::rel("E", {0, 1});
    CHECK_THROWS_AS(eval_formula(p4, *bad, end), DomainError);

    Structure iso = edgeless(2);
    CHECK_FALSE(eval_formula(iso, *has_nb, end));
}

TEST_CASE("relativized quantifiers range over the ball") {
    Structure p5 = path_graph(5);
    std::vector<Elem> mid{2};
    // "some element in V^1(x0) differs from x0"
    auto other = Formula::exists(1, Formula::negation(Formula::eq(0, 1)), 1);
    CHECK(eval_formula(p5, *other, mid));
    // "every element of V^0(x0) equals x0"
    auto self_only = Formula::forall(1, Formula::eq(0, 1), 0);
    CHECK(eval_formula(p5, *self_only, mid));
    // unrelativized version is false on a path
    auto all_eq = Formula::forall(1, Formula::eq(0, 1));
    CHECK_FALSE(eval_formula(p5, *all_eq, mid));
}

TEST_CASE("characteristic formulas satisfy the iff contract") {
    TheoryEngine eng;
    Signature sig({{"E", 2}});
    auto structures = enumerate_structures(sig, 3, true);

    std::vector<std::pair<const Structure*, std::vector<Elem>>> instances;
    for (const auto& m : structures) {
        instances.push_back({&m, {}});
        for (Elem a : m.universe()) instances.push_back({&m, {a}});
    }

    for (int n = 0; n <= 2; ++n) {
        // soundness plus depth bookkeeping
        for (const auto& [m, tuple] : instances) {
            TypeId t = eng.thn(*m, tuple, n);
            FormulaPtr phi = characteristic_formula(eng, t, sig);
            CHECK(phi->depth() == n);
            CHECK(eval_formula(*m, *phi, tuple));
        }
        // iff across the corpus (same parameter count only)
        for (std::size_t i = 0; i < instances.size(); ++i) {
            TypeId ti = eng.thn(*instances[i].first, instances[i].second, n);
            FormulaPtr phi = characteristic_formula(eng, ti, sig);
            for (std::size_t j = 0; j < instances.size(); ++j) {
                if (instances[i].second.size() != instances[j].second.size()) continue;
                TypeId tj = eng.thn(*instances[j].first, instances[j].second, n);
                bool sat = eval_formula(*instances[j].first, *phi, instances[j].second);
                CHECK(sat == (ti == tj));
            }
        }
    }
}

TEST_CASE("truth of depth-n formulas is a function of the depth-n type") {
    TheoryEngine eng;
    Signature sig({{"E", 2}});
    auto structures = enumerate_structures(sig, 3, true);

    // a few fixed depth-1 and depth-2 formulas with one free variable
    std::vector<FormulaPtr> formulas;
    formulas.push_back(Formula::exists(1, Formula::rel("E", {0, 1})));
    formulas.push_back(Formula::forall(1, Formula::disj({Formula::eq(0, 1),
                                                         Formula::rel("E", {1, 0})})));
    formulas.push_back(Formula::exists(
        1, Formula::conj({Formula::rel("E", {0, 1}),
                          Formula::exists(2, Formula::conj({Formula::rel("E", {1, 2}),
                                                            Formula::negation(Formula::eq(0, 2))}))})));

    for (const auto& phi : formulas) {
        const int n = phi->depth();
        std::map<TypeId, bool> seen;
        for (const auto& m : structures)
            for (Elem a : m.universe()) {
                std::vector<Elem> tuple{a};
                TypeId t = eng.thn(m, tuple, n);
                bool v = eval_formula(m, *phi, tuple);
                auto it = seen.find(t);
                if (it == seen.end())
                    seen.emplace(t, v);
                else
                    CHECK(it->second == v);
            }
    }
}
