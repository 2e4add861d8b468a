// Representability of operator tables: condition checkers, ranking
// synthesis, and a brute-force oracle over all rankings.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "prefhist/ranked_operator.h"
#include "prefhist/relations.h"

namespace prefhist {

struct Violation {
  // Condition id, e.g. "inclusion", "left-union", "loop".
  std::string condition;
  // The set sequences the condition was instantiated with.
  std::vector<SetSequence> witness;
  std::string detail;
  // For conditions guarded by reachability: a fewest-edge path in the
  // relation from the first witness to the second.
  std::vector<SetSequence> chain;
};

struct CheckReport {
  std::string theorem;
  bool verdict = true;
  // Exact number of violated instances; `violations` keeps the first
  // kMaxListed of them.
  std::size_t violation_count = 0;
  std::vector<Violation> violations;

  static constexpr std::size_t kMaxListed = 32;

  bool violates(std::string_view condition) const;
  void add(Violation v);
};

// Line-oriented report: a verdict line, then one "violation" line per listed
// instance with its witnesses in table syntax, then an optional chain line.
std::string to_text(const CheckReport& report);

// Two-dimensional conditions: inclusion, left-union, right-loop, left-loop.
// variant is kTwoDTight or kTwoDWide.
CheckReport check_theorem_2d(const OperatorTable& table, RelationVariant variant);

// The six three-dimensional conditions: inclusion, middle-union, left-union,
// left-loop, middle-loop, right-loop. variant is kThreeDTight or kThreeDWide.
CheckReport check_suggested_3d(const OperatorTable& table, RelationVariant variant);

// The n-dimensional conditions over the patch relation: inclusion,
// patch-cover, loop. Under kRelaxed the cover condition must hold for every
// relaxed patch and the relation uses any relaxed patch as a witness.
CheckReport check_theorem_nd(const OperatorTable& table, PatchMode patches = PatchMode::kTight);

// Equivalence classes of the total preorder used for synthesis: the strongly
// connected components of the patch relation, listed in a topological order
// of their condensation. Ties go to the class whose smallest member comes
// first in canonical order.
struct PreorderClasses {
  std::vector<std::vector<std::size_t>> classes;  // node indices, ascending
  std::vector<std::size_t> class_of;              // node index -> position in classes
};
PreorderClasses preorder_classes(const OperatorTable& table);

class SynthesisError : public Error {
 public:
  explicit SynthesisError(CheckReport report);
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

// r(a1..an) = class position of ({a1}, .., {an}). Throws SynthesisError when
// check_theorem_nd fails.
FixedRanking synthesize_ranking(const OperatorTable& table);

// Calls fn with every rank function on `points` points whose image is
// {0..k-1} for some k. Each weak order on the points appears exactly once.
// Stops early when fn returns false.
void for_each_weak_order(std::size_t points, const std::function<bool(std::span<const Rank>)>& fn);

constexpr std::size_t kDefaultOracleBudget = 8;

// True iff some ranking on X^n induces exactly this table. Requires
// |X|^n <= budget.
bool is_representable_bruteforce(const OperatorTable& table,
                                 std::size_t budget = kDefaultOracleBudget);

// All tables induced by some ranking for one shape, computed once by the same
// enumeration as is_representable_bruteforce.
class RepresentableSet {
 public:
  explicit RepresentableSet(const OperatorShape& shape, std::size_t budget = kDefaultOracleBudget);
  bool contains(const OperatorTable& table) const;
  std::size_t size() const { return tables_.size(); }
  std::size_t rankings_examined() const { return rankings_; }

 private:
  OperatorShape shape_;
  std::unordered_set<std::string> tables_;
  std::size_t rankings_ = 0;
};

}  // namespace prefhist
