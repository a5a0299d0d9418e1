#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmtk/determination.hpp"
#include "fmtk/metric.hpp"
#include "fmtk/structure.hpp"
#include "fmtk/sweep.hpp"
#include "fmtk/theory.hpp"

namespace fmtk {

// A candidate distorted sum: index structure with a metric on its points,
// a global structure, and the total partition map h (A_t = h^-1(t), with the
// windows M_t = union of A_s over d(t,s) <= 1 derived on demand).
// Elements shared between M and I must satisfy h(t) = t.
class DistortedSumSpec {
  public:
    DistortedSumSpec() = default;
    DistortedSumSpec(Structure index, MetricIndex metric, Structure global,
                     std::vector<Elem> h_points);

    const Structure& index() const { return index_; }
    const MetricIndex& metric() const { return metric_; }
    const Structure& global() const { return global_; }

    Elem h(Elem a) const;
    std::vector<Elem> h_tuple(std::span<const Elem> tuple) const;

    std::vector<Elem> block(Elem t) const;          // A_t
    std::vector<Elem> window_elements(Elem t) const;  // M_t
    Structure local_model(Elem t) const;            // induced global on M_t

    // d read through h: M-elements resolve via h, index points to themselves.
    ExtDistance dist(Elem x, Elem y) const;
    Elem resolve(Elem x) const;  // h(x) for x in M, x for x in I

    const std::string& fingerprint() const { return fingerprint_; }

  private:
    Structure index_;
    MetricIndex metric_;
    Structure global_;
    std::vector<Elem> h_;  // aligned with global_.universe()
    std::string fingerprint_;
};

// Key/value/table plumbing shared by the composition checks. Keys and values
// are canonical digest-based serials; values additionally resolve to interned
// type ids within the producing process.
class CompositionTable {
  public:
    CompositionTable() = default;
    CompositionTable(std::string label, int depth, int len)
        : label_(std::move(label)), depth_(depth), len_(len) {}

    void add(const std::string& key, const std::string& value, TypeId value_id,
             std::string prov, std::size_t index);
    void merge(const CompositionTable& other);

    DeterminationResult check() const { return map_.result(); }
    const DeterminationMap& map() const { return map_; }
    const std::string& label() const { return label_; }
    int depth() const { return depth_; }
    int len() const { return len_; }

    // Lookup of an unambiguous value; nullopt when the key is unknown.
    std::optional<std::string> lookup_serial(const std::string& key) const;
    TypeId lookup_type(const std::string& key) const;  // kNoType when unknown

    // Canonical text export: one sorted line per (key, value, count).
    std::string export_text() const;

  private:
    std::string label_;
    int depth_ = 0;
    int len_ = 0;
    DeterminationMap map_;
    std::unordered_map<std::string, TypeId> value_ids_;
};

struct VerifyOutcome {
    bool ok = false;
    CompositionTable table;
    std::optional<DeterminationWitness> witness;
};

// Def of distorted sums at quantifier-free level: for every tuple b-bar of
// length <= max_len, th^0(M;b-bar) must be a function of
// (th^0(I;h(b-bar)), th^0(M_{h(b_i)};b-bar) for i < len). Returns the
// accumulated table or the first colliding pair of tuples.
VerifyOutcome verify_distorted_sum(TheoryEngine& eng, const DistortedSumSpec& spec, int max_len);

}  // namespace fmtk
