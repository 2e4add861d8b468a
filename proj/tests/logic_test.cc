#include <gtest/gtest.h>

#include <random>

#include "prefhist/formula.h"
#include "prefhist/model_set.h"

namespace prefhist {
namespace {

TEST(ModelSetTest, BasicAlgebra) {
  const ModelSet a = ModelSet::of({1, 3}), b = ModelSet::of({1});
  EXPECT_TRUE(b.subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_EQ((a - b), ModelSet::of({3}));
  EXPECT_EQ(a.size(), 2);
  EXPECT_EQ(to_string(a), "{1,3}");
  EXPECT_EQ(to_string(ModelSet()), "{}");
}

TEST(ModelSetTest, ParseRoundTrip) {
  const auto u = Universe::abstract(5);
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const ModelSet s(bits);
    EXPECT_EQ(parse_model_set(to_string(s), u), s);
  }
  EXPECT_THROW(parse_model_set("{5}", u), Error);
  EXPECT_THROW(parse_model_set("{0,", u), Error);
}

TEST(ModelSetTest, Entails) {
  const auto u = Universe::atoms(2);
  EXPECT_TRUE(entails(u, ModelSet::of({1}), ModelSet::of({1, 3})));
  EXPECT_TRUE(entails(u, ModelSet(), ModelSet::of({2})));
  EXPECT_FALSE(entails(u, ModelSet::of({1, 2}), ModelSet::of({1})));
  EXPECT_THROW(entails(u, ModelSet::of({4}), ModelSet::of({1})), Error);
}

TEST(UniverseTest, Headers) {
  EXPECT_EQ(Universe::atoms(2).size(), 4);
  EXPECT_EQ(Universe::atoms(2).header(), "atoms=2");
  EXPECT_EQ(Universe::abstract(3).header(), "universe=3");
  EXPECT_EQ(Universe::abstract(3).atom_count(), -1);
  EXPECT_THROW(Universe::atoms(7), Error);
}

TEST(FormulaTest, ParsesGrammar) {
  const auto u = Universe::atoms(2);
  EXPECT_EQ(parse_formula("p0 & !p1", u),
            Formula::conjunction(Formula::atom(0), Formula::negation(Formula::atom(1))));
  EXPECT_EQ(parse_formula("true", u), Formula::constant(true));
  EXPECT_EQ(parse_formula("p0 -> p1 -> p0", u),
            Formula::implication(Formula::atom(0), Formula::implication(Formula::atom(1), Formula::atom(0))));
  EXPECT_EQ(parse_formula("p0 | p1 & p0", u),
            Formula::disjunction(Formula::atom(0), Formula::conjunction(Formula::atom(1), Formula::atom(0))));
}

TEST(FormulaTest, RejectsBadInput) {
  const auto u = Universe::atoms(2);
  EXPECT_THROW(parse_formula("p2", u), ParseError);
  EXPECT_THROW(parse_formula("p0 &", u), ParseError);
  EXPECT_THROW(parse_formula("(p0", u), ParseError);
  EXPECT_THROW(parse_formula("p0 p1", u), ParseError);
  try {
    parse_formula("p0 & & p1", u);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(FormulaTest, ModelsOf) {
  const auto u = Universe::atoms(2);
  EXPECT_EQ(models_of(parse_formula("p0 & !p1", u), u), ModelSet::of({1}));
  EXPECT_EQ(models_of(parse_formula("true", u), u), ModelSet::of({0, 1, 2, 3}));
  EXPECT_EQ(models_of(parse_formula("p0 & !p0", u), u), ModelSet());
  EXPECT_EQ(models_of(parse_formula("p0 <-> p1", u), u), ModelSet::of({0, 3}));
  EXPECT_THROW(models_of(Formula::atom(0), Universe::abstract(2)), Error);
}

// Random formulas over k atoms, depth-bounded.
Formula random_formula(std::mt19937_64& rng, int k, int depth) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 1 : 7);
  std::uniform_int_distribution<int> atom(0, k - 1);
  switch (kind(rng)) {
    case 0: return Formula::atom(atom(rng));
    case 1: return Formula::constant(rng() % 2 == 0);
    case 2: return Formula::negation(random_formula(rng, k, depth - 1));
    case 3: return Formula::conjunction(random_formula(rng, k, depth - 1), random_formula(rng, k, depth - 1));
    case 4: return Formula::disjunction(random_formula(rng, k, depth - 1), random_formula(rng, k, depth - 1));
    case 5: return Formula::implication(random_formula(rng, k, depth - 1), random_formula(rng, k, depth - 1));
    case 6: return Formula::biconditional(random_formula(rng, k, depth - 1), random_formula(rng, k, depth - 1));
    default: return Formula::atom(atom(rng));
  }
}

TEST(FormulaTest, ConnectivesMatchSetAlgebra) {
  std::mt19937_64 rng(7);
  for (int k = 1; k <= 4; ++k) {
    const auto u = Universe::atoms(k);
    for (int trial = 0; trial < 200; ++trial) {
      const Formula a = random_formula(rng, k, 3), b = random_formula(rng, k, 3);
      const ModelSet ma = models_of(a, u), mb = models_of(b, u);
      EXPECT_EQ(models_of(Formula::conjunction(a, b), u), ma & mb);
      EXPECT_EQ(models_of(Formula::disjunction(a, b), u), ma | mb);
      EXPECT_EQ(models_of(Formula::negation(a), u), u.all() - ma);
      EXPECT_EQ(models_of(Formula::implication(a, b), u), (u.all() - ma) | mb);
    }
  }
}

TEST(FormulaTest, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  const auto u = Universe::atoms(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Formula f = random_formula(rng, 3, 4);
    EXPECT_EQ(parse_formula(to_string(f), u), f) << to_string(f);
  }
}

TEST(FormulaTest, RenderedSetsDenoteTheSet) {
  for (int k = 1; k <= 3; ++k) {
    const auto u = Universe::atoms(k);
    for (std::uint64_t bits = 0; bits <= u.all().bits(); ++bits) {
      const ModelSet s(bits);
      const std::string text = render_model_set(s, u);
      EXPECT_EQ(models_of(parse_formula(text, u), u), s) << text;
    }
  }
  EXPECT_EQ(render_model_set(ModelSet::of({3}), Universe::atoms(2)), "p0 & p1");
  EXPECT_EQ(render_model_set(ModelSet(), Universe::atoms(2)), "false");
  EXPECT_EQ(render_model_set(Universe::atoms(2).all(), Universe::atoms(2)), "true");
}

}  // namespace
}  // namespace prefhist
