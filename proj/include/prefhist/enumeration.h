// Exhaustive and sampled enumeration of operator tables, and sweeps that
// compare a set of representation conditions with the brute-force oracle.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prefhist/ranked_operator.h"

namespace prefhist {

// n=3 over X={0,1}. Rows whose last set is a singleton map to it; the nine
// rows ending in X are fixed by hand. It passes the six suggested conditions
// under the tight relation, yet no ranking induces it.
OperatorTable builtin_counterexample();

// Number of tables with every entry a non-empty subset of its last set:
// the product over rows of 2^|C| - 1. Throws if it does not fit in 64 bits.
std::uint64_t operator_count(const OperatorShape& shape);

constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Calls fn with every such table, lexicographically by row in canonical
// order, each row's choices ordered by bitmask. Stops when fn returns false.
// Throws "budget exceeded" when operator_count(shape) > budget.
void enumerate_operators(const OperatorShape& shape,
                         const std::function<bool(const OperatorTable&)>& fn,
                         std::uint64_t budget = kDefaultEnumerationBudget);

// Each row with |C| >= 2 drawn uniformly from its choices.
OperatorTable random_operator(const OperatorShape& shape, std::mt19937_64& rng);

enum class ConditionSet { kSuggestedTight, kSuggestedWide, kTheoremNd };

// "suggested-tight", "suggested-wide", "nd". The parser also accepts
// underscores and "theorem-nd".
std::string to_string(ConditionSet c);
ConditionSet parse_condition_set(std::string_view name);

bool conditions_pass(const OperatorTable& table, ConditionSet conditions);

struct SweepOptions {
  std::size_t cap = 10;                 // tables kept per list
  std::optional<std::uint64_t> sample;  // draw this many tables instead of enumerating
  std::uint64_t seed = 0;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  std::size_t oracle_budget = 8;        // largest |X|^n for the brute-force oracle
};

struct SweepResult {
  ConditionSet conditions = ConditionSet::kTheoremNd;
  bool exhaustive = true;
  // "bruteforce", or "synthesis" when |X|^n exceeds the oracle budget and a
  // table counts as representable iff the ranking synthesized from it
  // reproduces it.
  std::string oracle;
  std::uint64_t examined = 0;
  std::uint64_t passed = 0;           // tables meeting the conditions
  std::uint64_t representable = 0;    // tables some ranking induces
  std::uint64_t counterexamples = 0;  // passed but not representable
  std::uint64_t false_negatives = 0;  // representable but not passed
  std::vector<OperatorTable> counterexample_tables;
  std::vector<OperatorTable> false_negative_tables;
};

// Requires dimension 3 for the suggested condition sets.
SweepResult sweep(const OperatorShape& shape, ConditionSet conditions,
                  const SweepOptions& options = {});

// "examined=<n> passed=<n> representable=<n> counterexamples=<n>"
std::string summary_line(const SweepResult& result);

}  // namespace prefhist
