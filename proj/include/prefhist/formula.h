// Propositional formulas over atoms p0, p1, ... and their model sets.
//
// Grammar (loosest binding first):
//   iff   := imp ( "<->" imp )*          left associative
//   imp   := or ( "->" imp )?            right associative
//   or    := and ( "|" and )*
//   and   := unary ( "&" unary )*
//   unary := "!" unary | atom | "true" | "false" | "(" iff ")"
//   atom  := "p" digits

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "prefhist/model_set.h"

namespace prefhist {

class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies, kIff };

  static Formula constant(bool value);
  static Formula atom(int index);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);

  Kind kind() const { return kind_; }
  // Only meaningful for kAtom.
  int atom_index() const { return atom_; }
  const std::vector<Formula>& children() const { return children_; }
  // Largest atom index referenced, or -1.
  int max_atom() const;

  bool operator==(const Formula&) const = default;

 private:
  Formula(Kind kind, int atom, std::vector<Formula> children)
      : kind_(kind), atom_(atom), children_(std::move(children)) {}

  Kind kind_;
  int atom_;
  std::vector<Formula> children_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  // Byte offset into the input where parsing failed.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Throws ParseError on syntax errors and on atoms the universe does not have.
Formula parse_formula(std::string_view text, const Universe& u);

// Prints with the minimum parentheses the grammar needs, so that
// parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

bool satisfies(int model, const Formula& f);
ModelSet models_of(const Formula& f, const Universe& u);

// A short formula whose models are exactly s, built from a greedy cover by
// prime implicants. Requires an atom universe.
std::string render_model_set(ModelSet s, const Universe& u);

}  // namespace prefhist
