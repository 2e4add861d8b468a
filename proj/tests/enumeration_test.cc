#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "prefhist/enumeration.h"
#include "prefhist/representation.h"

namespace prefhist {
namespace {

const ModelSet kZero = ModelSet::of({0});
const ModelSet kOne = ModelSet::of({1});
const ModelSet kX = ModelSet::of({0, 1});

// Sequences ending in a given C number (2^m - 1)^(n - 1); each row offers
// 2^|C| - 1 choices.
std::uint64_t closed_form_count(int n, int m) {
  const auto prefixes = static_cast<std::uint64_t>(std::pow((1 << m) - 1, n - 1));
  double count = 1;
  for (int c = 1; c < (1 << m); ++c) {
    count *= std::pow((1 << __builtin_popcount(c)) - 1, static_cast<double>(prefixes));
  }
  return static_cast<std::uint64_t>(count);
}

TEST(CounterexampleTest, Rows) {
  const auto t = builtin_counterexample();
  EXPECT_EQ(t.at(SetSequence{kOne, kOne, kX}), kX);
  EXPECT_EQ(t.at(SetSequence{kX, kZero, kX}), kZero);
  EXPECT_EQ(t.at(SetSequence{kOne, kZero, kX}), kOne);
  EXPECT_EQ(t.at(SetSequence{kX, kX, kX}), kX);
  const auto& shape = t.shape();
  for (std::size_t i = 0; i < shape.sequence_count(); ++i) {
    const ModelSet c = shape.sequence_at(i).back();
    if (c.size() == 1) EXPECT_EQ(t.entry(i), c);
  }
}

TEST(EnumerateTest, Counts) {
  EXPECT_EQ(operator_count(OperatorShape(3, Universe::abstract(2))), 19683u);
  EXPECT_EQ(operator_count(OperatorShape(2, Universe::abstract(2))), 27u);
  EXPECT_EQ(operator_count(OperatorShape(3, Universe::abstract(1))), 1u);
  for (auto [n, m] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{3, 2}}) {
    const OperatorShape shape(n, Universe::abstract(m));
    EXPECT_EQ(operator_count(shape), closed_form_count(n, m));
    std::uint64_t seen = 0;
    enumerate_operators(shape, [&](const OperatorTable&) { return ++seen, true; });
    EXPECT_EQ(seen, operator_count(shape));
  }
}

TEST(EnumerateTest, LexicographicDistinctAndWellFormed) {
  const OperatorShape shape(1, Universe::abstract(3));
  std::vector<std::vector<std::uint64_t>> keys;
  enumerate_operators(shape, [&](const OperatorTable& t) {
    std::vector<std::uint64_t> key;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const ModelSet v = t.entry(i);
      EXPECT_FALSE(v.empty());
      EXPECT_TRUE(v.subset_of(shape.sequence_at(i).back()));
      key.push_back(v.bits());
    }
    keys.push_back(key);
    return true;
  });
  EXPECT_EQ(keys.size(), 189u);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(std::set(keys.begin(), keys.end()).size(), keys.size());
}

TEST(EnumerateTest, EarlyStopAndBudget) {
  const OperatorShape shape(3, Universe::abstract(2));
  int calls = 0;
  enumerate_operators(shape, [&](const OperatorTable&) { return ++calls < 5; });
  EXPECT_EQ(calls, 5);
  EXPECT_THROW(enumerate_operators(shape, [](const OperatorTable&) { return true; }, 1000), Error);
}

TEST(ConditionSetTest, Names) {
  for (auto c : {ConditionSet::kSuggestedTight, ConditionSet::kSuggestedWide, ConditionSet::kTheoremNd}) {
    EXPECT_EQ(parse_condition_set(to_string(c)), c);
  }
  EXPECT_EQ(parse_condition_set("suggested_wide"), ConditionSet::kSuggestedWide);
  EXPECT_EQ(parse_condition_set("theorem_nd"), ConditionSet::kTheoremNd);
  EXPECT_THROW(parse_condition_set("other"), Error);
}

TEST(SweepTest, TightFindsTheBuiltinTable) {
  SweepOptions options;
  options.cap = 100000;
  const auto r = sweep(OperatorShape(3, Universe::abstract(2)), ConditionSet::kSuggestedTight, options);
  EXPECT_EQ(r.examined, 19683u);
  EXPECT_GE(r.counterexamples, 1u);
  EXPECT_EQ(r.counterexample_tables.size(), r.counterexamples);
  const auto builtin = builtin_counterexample();
  EXPECT_NE(std::find(r.counterexample_tables.begin(), r.counterexample_tables.end(), builtin),
            r.counterexample_tables.end());
  EXPECT_EQ(r.passed - r.counterexamples + r.false_negatives, r.representable);
}

TEST(SweepTest, NdMatchesOracleAtTwoDimensions) {
  const auto r = sweep(OperatorShape(2, Universe::abstract(2)), ConditionSet::kTheoremNd);
  EXPECT_EQ(r.examined, 27u);
  EXPECT_EQ(r.counterexamples, 0u);
  EXPECT_EQ(r.false_negatives, 0u);
  EXPECT_EQ(r.passed, r.representable);
  EXPECT_EQ(r.oracle, "bruteforce");
  EXPECT_EQ(summary_line(r), "examined=27 passed=" + std::to_string(r.passed) + " representable=" +
                                 std::to_string(r.representable) + " counterexamples=0");
  EXPECT_THROW(sweep(OperatorShape(2, Universe::abstract(2)), ConditionSet::kSuggestedWide), Error);
}

TEST(SweepTest, SampledRunsAreSeeded) {
  SweepOptions options;
  options.sample = 30;
  options.seed = 4;
  const OperatorShape shape(2, Universe::abstract(3));
  const auto a = sweep(shape, ConditionSet::kTheoremNd, options);
  const auto b = sweep(shape, ConditionSet::kTheoremNd, options);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.oracle, "synthesis");
  EXPECT_EQ(a.examined, 30u);
  EXPECT_EQ(summary_line(a), summary_line(b));
  EXPECT_EQ(a.counterexamples, 0u);
}

TEST(SweepTest, CapLimitsListsNotCounts) {
  SweepOptions options;
  options.cap = 2;
  const auto r = sweep(OperatorShape(3, Universe::abstract(2)), ConditionSet::kSuggestedTight, options);
  EXPECT_EQ(r.counterexample_tables.size(), 2u);
  EXPECT_GT(r.counterexamples, 2u);
}

}  // namespace
}  // namespace prefhist
