// "Provably preferable" relations read off an operator table, patches, and
// transitive closure.
//
// Edge direction: an edge s' -> s means s' is provably at least as preferable
// as s, i.e. the best history in the product of s' ranks no worse than the
// best history in the product of s.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefhist/ranked_operator.h"

namespace prefhist {

enum class RelationVariant {
  kTwoDTight,    // n = 2: equal-coordinate union cases only
  kTwoDWide,     // n = 2: adds containment, unions written explicitly
  kThreeDTight,  // n = 3 analogue of kTwoDTight
  kThreeDWide,   // n = 3 analogue of kTwoDWide
  kPatch,        // any n: containment, last-coordinate and patch cases
};

enum class PatchMode {
  kTight,    // the differing coordinate is exactly A_i minus A'_i
  kRelaxed,  // the differing coordinate is any B with A'_i | B == A_i
};

std::string to_string(RelationVariant v);
// Accepts the names printed by to_string.
RelationVariant parse_relation_variant(std::string_view name);

// The patch to A from A' (A'_i subset of A_i for every i): one sequence per
// coordinate i where they differ, equal to A except at i. Under kRelaxed the
// coordinate is set to A_i itself, the unique maximal choice.
using Patch = std::vector<SetSequence>;
Patch make_patch(std::span<const ModelSet> a, std::span<const ModelSet> a_prime,
                 PatchMode mode = PatchMode::kTight);

// Every relaxed patch to A from A': each differing coordinate i ranges over
// all B with A_i minus A'_i subset of B subset of A_i. Includes the tight one.
std::vector<Patch> relaxed_patches(std::span<const ModelSet> a, std::span<const ModelSet> a_prime);

class Relation {
 public:
  Relation(OperatorShape shape, RelationVariant variant);

  const OperatorShape& shape() const { return shape_; }
  RelationVariant variant() const { return variant_; }
  std::size_t node_count() const { return shape_.sequence_count(); }

  bool has_edge(std::size_t from, std::size_t to) const {
    return (rows_[from][to / 64] >> (to % 64)) & 1U;
  }
  bool has_edge(std::span<const ModelSet> from, std::span<const ModelSet> to) const {
    return has_edge(shape_.index_of(from), shape_.index_of(to));
  }
  void add_edge(std::size_t from, std::size_t to) { rows_[from][to / 64] |= std::uint64_t{1} << (to % 64); }

  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  // Fewest-edge path from -> ... -> to as node indices, empty if none.
  std::vector<std::size_t> shortest_path(std::size_t from, std::size_t to) const;

  bool operator==(const Relation& o) const {
    return shape_ == o.shape_ && variant_ == o.variant_ && rows_ == o.rows_;
  }

 private:
  friend Relation transitive_closure(const Relation& r);

  OperatorShape shape_;
  RelationVariant variant_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

// Self-loops are never added; they carry no information for the closure or
// the conditions that use it.
Relation build_relation(const OperatorTable& table, RelationVariant variant,
                        PatchMode patches = PatchMode::kTight);

// Non-reflexive transitive closure: i -> i only when i lies on a cycle.
Relation transitive_closure(const Relation& r);

// One "s' -> s" line per edge, sets in table syntax.
void write_edges(std::ostream& out, const Relation& r);

}  // namespace prefhist
