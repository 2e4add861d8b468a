// Fixed-length semantics: operators on n-sequences of non-empty model sets
// and the operators induced by a ranking of length-n histories.
//
// For a ranking r on X^n, [A1 ... An] is the set of last models an of the
// tuples in A1 x ... x An that reach the minimum rank over that product.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "prefhist/history.h"
#include "prefhist/model_set.h"

namespace prefhist {

// A1 ... An, each non-empty. The last set plays the role of the current
// observation C.
using SetSequence = std::vector<ModelSet>;

std::string to_string(std::span<const ModelSet> seq);  // "{0};{0,1};{1}"

// Dimension n and universe of an operator. Enumerates set sequences in the
// canonical order used by every file format: lexicographic by coordinate,
// sets ordered by bitmask value, first coordinate most significant.
class OperatorShape {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 22;

  OperatorShape(int dimension, Universe universe, std::size_t budget = kDefaultBudget);

  int dimension() const { return n_; }
  const Universe& universe() const { return universe_; }
  // Number of non-empty subsets of the universe.
  int set_count() const { return set_count_; }
  std::size_t sequence_count() const { return sequence_count_; }
  // |X|^n.
  std::size_t tuple_count() const { return tuple_count_; }

  // Throws on wrong length, empty sets or sets outside the universe.
  std::size_t index_of(std::span<const ModelSet> seq) const;
  SetSequence sequence_at(std::size_t index) const;
  std::vector<int> tuple_at(std::size_t index) const;
  std::size_t tuple_index(std::span<const int> tuple) const;

  bool operator==(const OperatorShape& o) const {
    return n_ == o.n_ && universe_ == o.universe_;
  }

 private:
  int n_;
  Universe universe_;
  int set_count_;
  std::size_t sequence_count_;
  std::size_t tuple_count_;
};

// r : X^n -> naturals. Lower is preferred. Nothing is assumed about r
// (no symmetry or triangle inequality in the n = 2 distance reading).
class FixedRanking {
 public:
  // All ranks zero.
  FixedRanking(int dimension, Universe universe);
  static FixedRanking from_function(int dimension, Universe universe,
                                    const std::function<Rank(std::span<const int>)>& fn);
  // Number of positions where consecutive models differ.
  static FixedRanking canonical(int dimension, Universe universe);

  int dimension() const { return n_; }
  const Universe& universe() const { return universe_; }
  std::size_t tuple_count() const { return ranks_.size(); }

  Rank rank(std::span<const int> tuple) const;
  void set_rank(std::span<const int> tuple, Rank r);
  // Ranks indexed like OperatorShape::tuple_index.
  std::span<const Rank> ranks() const { return ranks_; }
  std::span<Rank> mutable_ranks() { return ranks_; }

  bool operator==(const FixedRanking&) const = default;

 private:
  int n_;
  Universe universe_;
  std::vector<Rank> ranks_;
};

// A total map from set sequences to model sets. Entries are non-empty but
// need not lie inside their last input set; checkers report that.
class OperatorTable {
 public:
  // Every entry initialized to the last input set.
  explicit OperatorTable(OperatorShape shape);

  const OperatorShape& shape() const { return shape_; }
  int dimension() const { return shape_.dimension(); }
  const Universe& universe() const { return shape_.universe(); }
  std::size_t size() const { return entries_.size(); }

  ModelSet at(std::span<const ModelSet> seq) const { return entries_[shape_.index_of(seq)]; }
  ModelSet entry(std::size_t index) const { return entries_[index]; }
  void set(std::span<const ModelSet> seq, ModelSet value);
  void set_entry(std::size_t index, ModelSet value);
  std::span<const ModelSet> entries() const { return entries_; }

  bool operator==(const OperatorTable& o) const {
    return shape_ == o.shape_ && entries_ == o.entries_;
  }

 private:
  OperatorShape shape_;
  std::vector<ModelSet> entries_;
};

ModelSet update_from_ranking(const FixedRanking& r, std::span<const ModelSet> seq);

// Minimum rank over the product of the sets.
Rank rank_of_set_sequence(const FixedRanking& r, std::span<const ModelSet> seq);

OperatorTable table_from_ranking(const FixedRanking& r,
                                 std::size_t budget = OperatorShape::kDefaultBudget);

// Table file:
//   n=3 universe=2            (or atoms=<k>)
//   {0};{0};{0,1} => {0}
// Every set sequence must appear exactly once. Written in canonical order.
OperatorTable read_operator_table(std::istream& in);
void write_operator_table(std::ostream& out, const OperatorTable& t);

// Ranking file:
//   n=2 universe=2
//   h: 0 1 => 3
FixedRanking read_fixed_ranking(std::istream& in);
void write_fixed_ranking(std::ostream& out, const FixedRanking& r);

}  // namespace prefhist
