#include "prefhist/enumeration.h"

#include <algorithm>
#include <memory>

#include "prefhist/representation.h"

namespace prefhist {

OperatorTable builtin_counterexample() {
  const ModelSet z = ModelSet::of({0}), o = ModelSet::of({1}), x = ModelSet::of({0, 1});
  OperatorTable t(OperatorShape(3, Universe::abstract(2)));
  const struct {
    ModelSet a, b, value;
  } rows[] = {
      {z, z, z}, {z, o, z}, {o, z, o}, {o, o, x}, {z, x, z},
      {o, x, o}, {x, z, z}, {x, o, x}, {x, x, x},
  };
  for (const auto& r : rows) {
    const std::array<ModelSet, 3> seq{r.a, r.b, x};
    t.set(seq, r.value);
  }
  return t;
}

namespace {

// Non-empty subsets of c in increasing bitmask order.
std::vector<ModelSet> choices_of(ModelSet c) {
  std::vector<ModelSet> out;
  const std::uint64_t bits = c.bits();
  for (std::uint64_t sub = bits; sub != 0; sub = (sub - 1) & bits) out.push_back(ModelSet(sub));
  std::reverse(out.begin(), out.end());
  return out;
}

struct FreeRow {
  std::size_t index;
  std::vector<ModelSet> choices;
};

std::vector<FreeRow> free_rows(const OperatorShape& shape) {
  std::vector<FreeRow> rows;
  for (std::size_t i = 0; i < shape.sequence_count(); ++i) {
    const ModelSet c = shape.sequence_at(i).back();
    if (c.size() >= 2) rows.push_back({i, choices_of(c)});
  }
  return rows;
}

}  // namespace

std::uint64_t operator_count(const OperatorShape& shape) {
  std::uint64_t count = 1;
  for (const auto& row : free_rows(shape)) {
    const std::uint64_t k = row.choices.size();
    if (count > UINT64_MAX / k) throw Error("operator count does not fit in 64 bits");
    count *= k;
  }
  return count;
}

void enumerate_operators(const OperatorShape& shape,
                         const std::function<bool(const OperatorTable&)>& fn, std::uint64_t budget) {
  const auto rows = free_rows(shape);
  std::uint64_t count = 1;
  for (const auto& row : rows) {
    const std::uint64_t k = row.choices.size();
    if (count > budget / k) {
      throw Error("budget exceeded: more than " + std::to_string(budget) + " operator tables");
    }
    count *= k;
  }
  OperatorTable t(shape);
  std::vector<std::size_t> digit(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) t.set_entry(rows[r].index, rows[r].choices[0]);
  while (true) {
    if (!fn(t)) return;
    // Odometer with the last free row least significant.
    std::size_t r = rows.size();
    while (r > 0) {
      --r;
      if (++digit[r] < rows[r].choices.size()) {
        t.set_entry(rows[r].index, rows[r].choices[digit[r]]);
        break;
      }
      digit[r] = 0;
      t.set_entry(rows[r].index, rows[r].choices[0]);
      if (r == 0) return;
    }
    if (rows.empty()) return;
  }
}

OperatorTable random_operator(const OperatorShape& shape, std::mt19937_64& rng) {
  OperatorTable t(shape);
  for (const auto& row : free_rows(shape)) {
    std::uniform_int_distribution<std::size_t> pick(0, row.choices.size() - 1);
    t.set_entry(row.index, row.choices[pick(rng)]);
  }
  return t;
}

std::string to_string(ConditionSet c) {
  switch (c) {
    case ConditionSet::kSuggestedTight: return "suggested-tight";
    case ConditionSet::kSuggestedWide: return "suggested-wide";
    case ConditionSet::kTheoremNd: return "nd";
  }
  return "?";
}

ConditionSet parse_condition_set(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "suggested-tight") return ConditionSet::kSuggestedTight;
  if (s == "suggested-wide") return ConditionSet::kSuggestedWide;
  if (s == "nd" || s == "theorem-nd") return ConditionSet::kTheoremNd;
  throw Error("unknown condition set '" + std::string(name) + "'");
}

bool conditions_pass(const OperatorTable& table, ConditionSet conditions) {
  switch (conditions) {
    case ConditionSet::kSuggestedTight:
      return check_suggested_3d(table, RelationVariant::kThreeDTight).verdict;
    case ConditionSet::kSuggestedWide:
      return check_suggested_3d(table, RelationVariant::kThreeDWide).verdict;
    case ConditionSet::kTheoremNd:
      return check_theorem_nd(table).verdict;
  }
  return false;
}

namespace {

bool reproduced_by_synthesis(const OperatorTable& table) {
  try {
    return table_from_ranking(synthesize_ranking(table)) == table;
  } catch (const SynthesisError&) {
    return false;
  }
}

}  // namespace

SweepResult sweep(const OperatorShape& shape, ConditionSet conditions, const SweepOptions& options) {
  if (conditions != ConditionSet::kTheoremNd && shape.dimension() != 3) {
    throw Error("dimension mismatch: " + to_string(conditions) + " needs n=3");
  }
  SweepResult result;
  result.conditions = conditions;
  result.exhaustive = !options.sample.has_value();

  std::unique_ptr<RepresentableSet> oracle;
  if (shape.tuple_count() <= options.oracle_budget) {
    oracle = std::make_unique<RepresentableSet>(shape, options.oracle_budget);
    result.oracle = "bruteforce";
  } else {
    result.oracle = "synthesis";
  }

  auto visit = [&](const OperatorTable& t) {
    ++result.examined;
    const bool pass = conditions_pass(t, conditions);
    const bool repr = oracle ? oracle->contains(t) : reproduced_by_synthesis(t);
    result.passed += pass;
    result.representable += repr;
    if (pass && !repr) {
      ++result.counterexamples;
      if (result.counterexample_tables.size() < options.cap) result.counterexample_tables.push_back(t);
    }
    if (!pass && repr) {
      ++result.false_negatives;
      if (result.false_negative_tables.size() < options.cap) result.false_negative_tables.push_back(t);
    }
    return true;
  };

  if (options.sample) {
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t i = 0; i < *options.sample; ++i) visit(random_operator(shape, rng));
  } else {
    enumerate_operators(shape, visit, options.enumeration_budget);
  }
  return result;
}

std::string summary_line(const SweepResult& r) {
  return "examined=" + std::to_string(r.examined) + " passed=" + std::to_string(r.passed) +
         " representable=" + std::to_string(r.representable) +
         " counterexamples=" + std::to_string(r.counterexamples);
}

}  // namespace prefhist
