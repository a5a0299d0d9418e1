#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fmtk/metric.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

// All structures over the signature with universe sizes 1..max_size, in
// deterministic order (size, then per-symbol subset odometer). Optionally
// deduplicated up to isomorphism by canonical-form minimization over all
// universe permutations. Throws BudgetError when the count would exceed cap.
std::vector<Structure> enumerate_structures(const Signature& sig, int max_size,
                                            bool dedup_iso = false,
                                            std::size_t cap = 2'000'000);

// All undirected simple graphs (symmetric irreflexive binary relation named
// `edge`) on 1..max_size vertices, deduplicated up to isomorphism.
std::vector<Structure> enumerate_graphs(const std::string& edge, int max_size,
                                        std::size_t cap = 2'000'000);

// Canonical form under universe relabeling; equal iff isomorphic.
std::string canonical_form(const Structure& s);

// Seeded generators (reproducible; the seed is always an input).
using Rng = std::mt19937_64;

// Erdos-Renyi style undirected graph with loop-free symmetric `edge`.
Structure random_graph(int n, double edge_prob, Rng& rng, const std::string& edge = "E");

// Graph plus a random unary predicate C marking each vertex with prob c_prob.
Structure random_graph_with_unary(int n, double edge_prob, double c_prob, Rng& rng,
                                  const std::string& edge = "E", const std::string& unary = "C");

// Random integer metric on the given points: raw symmetric values from
// {1..max_finite} u {infinity}, repaired by min-plus closure.
MetricIndex random_metric(std::vector<Elem> points, std::uint64_t max_finite, double inf_prob,
                          Rng& rng);

}  // namespace fmtk
