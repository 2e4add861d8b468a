// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "prefhist/enumeration.h"
#include "prefhist/postulates.h"
#include "prefhist/representation.h"

namespace prefhist {
namespace {

const ModelSet kZero = ModelSet::of({0});
const ModelSet kOne = ModelSet::of({1});
const ModelSet kX = ModelSet::of({0, 1});

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome counterexample_reproduction() {
  const auto t = builtin_counterexample();
  const auto tight = check_suggested_3d(t, RelationVariant::kThreeDTight);
  const bool representable = is_representable_bruteforce(t);
  return {tight.verdict && !representable,
          std::string("suggested-tight ") + (tight.verdict ? "pass" : "fail") + ", oracle " +
              (representable ? "representable" : "not representable")};
}

Outcome wide_relation_rejection() {
  const auto t = builtin_counterexample();
  const auto rel = build_relation(t, RelationVariant::kThreeDWide);
  const std::vector<SetSequence> chain{{kOne, kZero, kX}, {kOne, kX, kX}, {kX, kX, kX}, {kX, kZero, kX}};
  bool edges = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) edges = edges && rel.has_edge(chain[i], chain[i + 1]);
  const auto report = check_suggested_3d(t, RelationVariant::kThreeDWide);
  bool cited = false;
  for (const auto& v : report.violations) {
    cited = cited || (v.condition == "left-loop" &&
                      v.witness == std::vector<SetSequence>{chain.front(), chain.back()});
  }
  return {edges && cited && !report.verdict,
          std::string("chain edges ") + (edges ? "present" : "missing") + ", left-loop on (1,0,X)/(X,0,X) " +
              (cited ? "violated" : "not reported")};
}

Outcome enumeration_claim() {
  const auto r = sweep(OperatorShape(3, Universe::abstract(2)), ConditionSet::kSuggestedWide);
  return {r.examined == 19683 && r.counterexamples == 0, summary_line(r)};
}

Outcome soundness() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<Rank> rank(0, 9);
  int total = 0, passed = 0;
  for (int n = 2; n <= 3; ++n) {
    for (int size = 2; size <= 3; ++size) {
      for (int i = 0; i < 125; ++i) {
        FixedRanking r(n, Universe::abstract(size));
        for (auto& x : r.mutable_ranks()) x = rank(rng);
        ++total;
        passed += check_theorem_nd(table_from_ranking(r)).verdict;
      }
    }
  }
  return {total >= 500 && passed == total, std::to_string(passed) + "/" + std::to_string(total) +
                                               " ranking tables pass the nd conditions"};
}

Outcome completeness_roundtrip() {
  const OperatorShape shape(3, Universe::abstract(2));
  const RepresentableSet oracle(shape);
  std::uint64_t examined = 0, passed = 0, roundtrips = 0, disagreements = 0;
  enumerate_operators(shape, [&](const OperatorTable& t) {
    ++examined;
    const bool pass = check_theorem_nd(t).verdict;
    if (pass) {
      ++passed;
      roundtrips += table_from_ranking(synthesize_ranking(t)) == t;
    }
    disagreements += pass != oracle.contains(t);
    return true;
  });
  return {examined == 19683 && roundtrips == passed && disagreements == 0 && passed == oracle.size(),
          "examined=" + std::to_string(examined) + " passed=" + std::to_string(passed) +
              " roundtrips=" + std::to_string(roundtrips) + " representable=" + std::to_string(oracle.size()) +
              " disagreements=" + std::to_string(disagreements)};
}

Outcome two_dimensional_correspondence() {
  int tables = 0, agree = 0;
  enumerate_operators(OperatorShape(2, Universe::abstract(2)), [&](const OperatorTable& t) {
    ++tables;
    const bool two = check_theorem_2d(t, RelationVariant::kTwoDWide).verdict;
    agree += check_theorem_nd(t).verdict == two && check_theorem_nd(t, PatchMode::kRelaxed).verdict == two;
    return true;
  });
  return {tables == 27 && agree == tables,
          std::to_string(agree) + "/" + std::to_string(tables) + " tables agree (tight and relaxed patches)"};
}

Outcome postulate_suite() {
  const auto u = Universe::atoms(2);
  std::vector<Formula> pool;
  for (const char* f : {"p0", "p1", "!p0", "p0 | p1", "p0 -> p1", "p0 <-> !p1"}) pool.push_back(parse_formula(f, u));
  int clean = 0;
  std::string first_failure;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto report = check_postulate_suite(make_valid_general_ranking(u, 3, seed), pool, 3);
    if (report.all_passed()) {
      ++clean;
    } else if (first_failure.empty()) {
      first_failure = " first failure seed " + std::to_string(seed) + ": " + to_text(report);
    }
  }
  return {clean == 100, std::to_string(clean) + "/100 rankings pass all ten properties" + first_failure};
}

Outcome km_departures() {
  const auto w = find_km_u8_violation(Universe::abstract(2));
  const auto d = epistemic_state_demo(Universe::atoms(2));
  const bool demo = d.forward != d.backward && d.forward_prefix == d.backward_prefix &&
                    d.forward_prefix == ModelSet::of({3});
  std::string detail = w ? "U8 witness A=" + to_string(w->a) + " A'=" + to_string(w->a_prime) +
                               " B=" + to_string(w->b) + " joined=" + to_string(w->joined) +
                               " separate=" + to_string(w->separate)
                         : std::string("no U8 witness");
  detail += ", demo forward=" + to_string(d.forward) + " backward=" + to_string(d.backward);
  return {w.has_value() && demo, detail};
}

}  // namespace
}  // namespace prefhist

int main() {
  using prefhist::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"counterexample-reproduction", prefhist::counterexample_reproduction},
      {"wide-relation-rejection", prefhist::wide_relation_rejection},
      {"enumeration-claim", prefhist::enumeration_claim},
      {"nd-soundness", prefhist::soundness},
      {"nd-completeness-roundtrip", prefhist::completeness_roundtrip},
      {"two-dimensional-correspondence", prefhist::two_dimensional_correspondence},
      {"postulate-suite", prefhist::postulate_suite},
      {"km-departures", prefhist::km_departures},
  };
  int failures = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
