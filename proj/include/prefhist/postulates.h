// Executable checks of the logical properties of update by preferred
// histories, plus the two small constructions showing where it departs from
// KM update: a (U8) violation and order sensitivity of epistemic states.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prefhist/formula.h"
#include "prefhist/history.h"
#include "prefhist/ranked_operator.h"

namespace prefhist {

struct PropertyResult {
  std::string id;
  std::string statement;
  bool passed = true;
  std::size_t instances = 0;  // instances examined
  std::string witness;        // first counterexample, if any
};

struct SuiteReport {
  std::vector<PropertyResult> results;

  bool all_passed() const;
  const PropertyResult& at(std::string_view id) const;
};

// One line per property: "<id> PASS" or "<id> FAIL <witness>".
std::string to_text(const SuiteReport& report);

// Property ids, in report order.
inline constexpr const char* kPropertyIds[] = {
    "theory",                   // [s] is a set of models of the universe
    "syntax-independence",      // equivalent observations give equal results
    "implied-observation",      // b |= a: [s a b t] = [s b t] = [s b a t]
    "true-elimination",         // [s true] = [s]
    "disjunction-intersection", // formulas of both [s a t], [s b t] hold in [s (a|b) t]
    "disjunction-trichotomy",   // [s (a|b) t] is [s a t], [s b t] or their union
    "success",                  // [s a] inside models(a)
    "conjunction",              // [s a] meets b: [s a b] = [s (a&b)] = [s a] & b
    "expansion",                // [s] meets a: [s a] = [s] & a
    "consistency",              // [s] non-empty
};

// Results are model sets, so an intersection of theories appears as a union
// of model sets.
//
// Checks every property over all observation sequences of total length at
// most max_length built from the pool (plus the disjunctions, conjunctions
// and equivalent rewrites the properties need). Requires consistent pool
// formulas and max_length <= r.max_length().
SuiteReport check_postulate_suite(const GeneralRanking& r, const std::vector<Formula>& pool,
                                  int max_length);

// A two-dimensional ranking under which updating a disjunction of prior
// beliefs differs from the union of the separate updates:
// [(A | A') . B] != [A . B] | [A' . B].
struct U8Witness {
  FixedRanking ranking;
  ModelSet a, a_prime, b;
  ModelSet joined;    // [(A | A') . B]
  ModelSet separate;  // [A . B] | [A' . B]
};

// First violating (A, A', B) for this ranking, sets in mask order.
std::optional<U8Witness> u8_violation(const FixedRanking& r);

// Searches rankings on X^2 in weak-order enumeration order; |X| <= 4.
std::optional<U8Witness> find_km_u8_violation(const Universe& u);

// phi = p0, psi = p1. Under `ranking`, [phi psi (!phi | !psi)] and
// [psi phi (!phi | !psi)] differ while both length-2 prefixes give
// models(phi & psi).
struct EpistemicDemo {
  GeneralRanking ranking;
  ModelSet forward;          // [p0, p1, !p0 | !p1]
  ModelSet backward;         // [p1, p0, !p0 | !p1]
  ModelSet forward_prefix;   // [p0, p1]
  ModelSet backward_prefix;  // [p1, p0]
  ModelSet canonical_forward;
  ModelSet canonical_backward;
};

// Needs an atom universe with at least two atoms.
EpistemicDemo epistemic_state_demo(const Universe& u);
std::string to_text(const EpistemicDemo& demo);

}  // namespace prefhist
