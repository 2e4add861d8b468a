// Update by preferred histories over a general history ranking.
//
// A history is a non-empty sequence of models. It explains a sequence of
// observations when a non-decreasing choice of positions in the history
// satisfies the observations in order. The agent believes whatever holds at
// the last model of every minimally ranked explaining history.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefhist/model_set.h"

namespace prefhist {

using History = std::vector<int>;
// Each element must be non-empty; the sequence itself may be empty.
using ObservationSequence = std::vector<ModelSet>;
using Rank = std::uint32_t;

bool explains(std::span<const int> history, std::span<const ModelSet> observations);

// True iff `sub` is an order-preserving selection of strictly fewer positions
// of `history`.
bool is_subhistory(std::span<const int> sub, std::span<const int> history);

std::string to_string(std::span<const int> history);

// A rank for every history of length 1..max_length over a universe.
// Lower rank is preferred. Histories with consecutive repeats are part of the
// domain so that rankings read from files are total.
class GeneralRanking {
 public:
  // All ranks zero; callers fill them with set_rank.
  GeneralRanking(Universe universe, int max_length);

  // rank(h) = (length, number of model changes), ordered lexicographically.
  static GeneralRanking canonical(Universe universe, int max_length);

  const Universe& universe() const { return universe_; }
  int max_length() const { return max_length_; }
  std::size_t history_count() const { return ranks_.size(); }

  Rank rank(std::span<const int> history) const { return ranks_[index_of(history)]; }
  void set_rank(std::span<const int> history, Rank r) { ranks_[index_of(history)] = r; }

  // Histories in file order: by length, then lexicographically.
  std::vector<History> histories() const;

  // First pair (sub, h) with sub a strict sub-history of h whose rank is not
  // strictly lower, if any. Checks single-deletion steps, which is enough
  // because every strict sub-history is reached by a chain of them.
  std::optional<std::pair<History, History>> find_subhistory_violation() const;

  bool operator==(const GeneralRanking&) const = default;

 private:
  std::size_t index_of(std::span<const int> history) const;

  Universe universe_;
  int max_length_;
  std::vector<std::size_t> offsets_;  // first index of each length
  std::vector<Rank> ranks_;
};

// Random ranking that satisfies sub-history preference: each history gets
// one more than the largest rank among its one-deletion sub-histories plus a
// seeded random offset. Deterministic in the seed.
GeneralRanking make_valid_general_ranking(const Universe& u, int max_length, std::uint64_t seed);

// Minimal-rank explaining histories without consecutive repeats and of
// length at most max(1, |observations|). Longer explainers always contain a
// shorter explaining sub-history, so the bound loses nothing for rankings
// that prefer sub-histories. Sorted by length, then lexicographically.
std::vector<History> preferred_histories(std::span<const ModelSet> observations,
                                         const GeneralRanking& r);

// The believed models: last elements of the preferred histories.
ModelSet update_general(std::span<const ModelSet> observations, const GeneralRanking& r);

// File format:
//   # comment
//   atoms=2 maxlen=3          (or universe=<m>)
//   h: 0 1 => 5
// Every history of length 1..maxlen must appear exactly once.
GeneralRanking read_general_ranking(std::istream& in);
void write_general_ranking(std::ostream& out, const GeneralRanking& r);

}  // namespace prefhist
