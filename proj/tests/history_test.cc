#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "prefhist/formula.h"
#include "prefhist/history.h"

namespace prefhist {
namespace {

ModelSet m(const char* formula, const Universe& u) { return models_of(parse_formula(formula, u), u); }

// Independent reading of "explains": a non-decreasing choice of positions,
// one per observation, each landing on a model of that observation.
bool explains_oracle(const History& h, const ObservationSequence& obs, std::size_t j, std::size_t start) {
  if (j == obs.size()) return true;
  for (std::size_t i = start; i < h.size(); ++i) {
    if (obs[j].contains(h[i]) && explains_oracle(h, obs, j + 1, i)) return true;
  }
  return false;
}

void all_histories(int models, int max_len, History& prefix, std::vector<History>& out) {
  if (!prefix.empty()) out.push_back(prefix);
  if (static_cast<int>(prefix.size()) == max_len) return;
  for (int x = 0; x < models; ++x) {
    prefix.push_back(x);
    all_histories(models, max_len, prefix, out);
    prefix.pop_back();
  }
}

// Brute force over every history up to the ranking's bound, repeats included.
ModelSet update_oracle(const ObservationSequence& obs, const GeneralRanking& r) {
  std::vector<History> hs;
  History prefix;
  all_histories(r.universe().size(), r.max_length(), prefix, hs);
  Rank best = std::numeric_limits<Rank>::max();
  ModelSet out;
  for (const auto& h : hs) {
    if (!explains_oracle(h, obs, 0, 0)) continue;
    const Rank k = r.rank(h);
    if (k < best) {
      best = k;
      out = ModelSet();
    }
    if (k == best) out = out | ModelSet::singleton(h.back());
  }
  return out;
}

TEST(ExplainsTest, Examples) {
  const auto u = Universe::atoms(2);
  const ObservationSequence tau{m("p0", u), m("p1", u)};
  EXPECT_TRUE(explains(History{3}, tau));
  EXPECT_TRUE(explains(History{1, 2}, tau));
  EXPECT_FALSE(explains(History{2, 1}, tau));
  EXPECT_TRUE(explains(History{0}, ObservationSequence{}));
}

TEST(ExplainsTest, MatchesOracleAndSubsequences) {
  std::mt19937_64 rng(3);
  const auto u = Universe::atoms(2);
  std::uniform_int_distribution<int> model(0, 3), len(1, 4), set(1, 15);
  for (int trial = 0; trial < 2000; ++trial) {
    History h(len(rng));
    for (auto& x : h) x = model(rng);
    ObservationSequence obs(len(rng) - 1);
    for (auto& o : obs) o = ModelSet(static_cast<std::uint64_t>(set(rng)));
    const bool e = explains(h, obs);
    EXPECT_EQ(e, explains_oracle(h, obs, 0, 0));
    if (e && !obs.empty()) {
      // Dropping any observation keeps the history an explanation.
      for (std::size_t drop = 0; drop < obs.size(); ++drop) {
        auto sub = obs;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(explains(h, sub));
      }
    }
  }
}

TEST(SubhistoryTest, Examples) {
  EXPECT_TRUE(is_subhistory(History{2, 4}, History{1, 2, 3, 4}));
  EXPECT_FALSE(is_subhistory(History{1, 2}, History{1, 2}));
  EXPECT_FALSE(is_subhistory(History{4, 2}, History{1, 2, 3, 4}));
}

TEST(GeneralRankingTest, DomainSize) {
  // Lengths 1..3: 2 + 4 + 8 over two models, 4 + 16 + 64 over four.
  EXPECT_EQ(GeneralRanking(Universe::abstract(2), 3).history_count(), 14u);
  EXPECT_EQ(GeneralRanking(Universe::atoms(2), 3).history_count(), 84u);
}

TEST(GeneralRankingTest, CanonicalIsValid) {
  const auto r = GeneralRanking::canonical(Universe::atoms(2), 3);
  EXPECT_FALSE(r.find_subhistory_violation().has_value());
  EXPECT_LT(r.rank(History{1}), r.rank(History{1, 1}));
  EXPECT_LT(r.rank(History{1, 1}), r.rank(History{1, 2}));
}

TEST(GeneralRankingTest, RandomRankingsAreValidAndDeterministic) {
  const auto u = Universe::atoms(2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = make_valid_general_ranking(u, 3, seed);
    EXPECT_EQ(r, make_valid_general_ranking(u, 3, seed));
    // Exhaustive scan over all pairs, not only single deletions.
    const auto hs = r.histories();
    ASSERT_EQ(hs.size(), 84u);
    for (const auto& h : hs) {
      for (const auto& s : hs) {
        if (is_subhistory(s, h)) EXPECT_LT(r.rank(s), r.rank(h));
      }
    }
  }
  EXPECT_NE(make_valid_general_ranking(u, 3, 1), make_valid_general_ranking(u, 3, 2));
}

TEST(GeneralRankingTest, DetectsViolation) {
  auto r = GeneralRanking::canonical(Universe::atoms(2), 2);
  r.set_rank(History{1, 0}, 0);
  const auto bad = r.find_subhistory_violation();
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->second, (History{1, 0}));
}

TEST(UpdateGeneralTest, Examples) {
  const auto u = Universe::atoms(2);
  const auto r = GeneralRanking::canonical(u, 3);
  EXPECT_EQ(preferred_histories(ObservationSequence{m("p0 & p1", u)}, r), (std::vector<History>{{3}}));
  EXPECT_EQ(preferred_histories(ObservationSequence{m("p0", u), m("p1", u)}, r),
            (std::vector<History>{{3}}));
  EXPECT_EQ(update_general(ObservationSequence{m("p0", u), m("!p0", u)}, r), ModelSet::of({0, 2}));
  EXPECT_EQ(update_general(ObservationSequence{m("p0", u), m("p1", u)}, r), ModelSet::of({3}));
  EXPECT_EQ(update_general(ObservationSequence{}, r), u.all());
  for (const auto& h : preferred_histories(ObservationSequence{}, r)) EXPECT_EQ(h.size(), 1u);
}

TEST(UpdateGeneralTest, RejectsBadInput) {
  const auto u = Universe::atoms(2);
  const auto r = GeneralRanking::canonical(u, 2);
  EXPECT_THROW(update_general(ObservationSequence{m("p0", u), ModelSet()}, r), Error);
  EXPECT_THROW(update_general(ObservationSequence(3, m("p0", u)), r), Error);
}

TEST(UpdateGeneralTest, MatchesBruteForceOracle) {
  const auto u = Universe::atoms(2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> set(1, 15), len(0, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = make_valid_general_ranking(u, 3, seed);
    for (int trial = 0; trial < 100; ++trial) {
      ObservationSequence obs(len(rng));
      for (auto& o : obs) o = ModelSet(static_cast<std::uint64_t>(set(rng)));
      const ModelSet got = update_general(obs, r);
      EXPECT_EQ(got, update_oracle(obs, r));
      EXPECT_FALSE(got.empty());
      if (!obs.empty()) EXPECT_TRUE(got.subset_of(obs.back()));
      for (const auto& h : preferred_histories(obs, r)) {
        EXPECT_LE(h.size(), std::max<std::size_t>(1, obs.size()));
        EXPECT_TRUE(explains(h, obs));
      }
    }
  }
}

TEST(GeneralRankingIoTest, RoundTrip) {
  const auto r = make_valid_general_ranking(Universe::atoms(2), 3, 9);
  std::stringstream s;
  write_general_ranking(s, r);
  EXPECT_EQ(read_general_ranking(s), r);
}

TEST(GeneralRankingIoTest, RejectsIncompleteAndDuplicate) {
  std::istringstream missing("universe=2 maxlen=1\nh: 0 => 0\n");
  EXPECT_THROW(read_general_ranking(missing), Error);
  std::istringstream dup("universe=2 maxlen=1\nh: 0 => 0\nh: 0 => 1\nh: 1 => 0\n");
  EXPECT_THROW(read_general_ranking(dup), Error);
  std::istringstream ok("# comment\nuniverse=2 maxlen=1\nh: 0 => 0\nh: 1 => 4\n");
  EXPECT_EQ(read_general_ranking(ok).rank(History{1}), 4u);
}

}  // namespace
}  // namespace prefhist
