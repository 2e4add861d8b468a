#include "prefhist/formula.h"

#include <algorithm>
#include <cctype>

namespace prefhist {

Formula Formula::constant(bool value) {
  return Formula(value ? Kind::kTrue : Kind::kFalse, -1, {});
}
Formula Formula::atom(int index) { return Formula(Kind::kAtom, index, {}); }
Formula Formula::negation(Formula f) { return Formula(Kind::kNot, -1, {std::move(f)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(Kind::kAnd, -1, {std::move(a), std::move(b)});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(Kind::kOr, -1, {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(Kind::kImplies, -1, {std::move(a), std::move(b)});
}
Formula Formula::biconditional(Formula a, Formula b) {
  return Formula(Kind::kIff, -1, {std::move(a), std::move(b)});
}

int Formula::max_atom() const {
  int m = kind_ == Kind::kAtom ? atom_ : -1;
  for (const auto& c : children_) m = std::max(m, c.max_atom());
  return m;
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error("at position " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Universe& u) : text_(text), universe_(u) {}

  Formula parse() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept("<->")) f = Formula::biconditional(std::move(f), parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept("->")) return Formula::implication(std::move(f), parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = Formula::disjunction(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conjunction(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("!")) return Formula::negation(parse_unary());
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const auto word = text_.substr(start, pos_ - start);
    if (word == "true") return Formula::constant(true);
    if (word == "false") return Formula::constant(false);
    if (word.size() >= 2 && word[0] == 'p' &&
        std::all_of(word.begin() + 1, word.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (word.size() > 4) { pos_ = start; fail("atom index too large"); }
      const int index = std::stoi(std::string(word.substr(1)));
      const int atoms = universe_.has_atoms() ? universe_.atom_count() : 0;
      if (index >= atoms) {
        pos_ = start;
        fail("unknown atom '" + std::string(word) + "' (universe has " + std::to_string(atoms) + " atoms)");
      }
      return Formula::atom(index);
    }
    pos_ = start;
    if (word.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    fail("unknown identifier '" + std::string(word) + "'");
  }

  std::string_view text_;
  const Universe& universe_;
  std::size_t pos_ = 0;
};

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kIff: return 1;
    case Formula::Kind::kImplies: return 2;
    case Formula::Kind::kOr: return 3;
    case Formula::Kind::kAnd: return 4;
    case Formula::Kind::kNot: return 5;
    default: return 6;
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.kind());
  const bool parens = p < min_prec;
  if (parens) out += '(';
  const auto& c = f.children();
  auto binary = [&](const char* op, int left, int right) {
    print(c[0], left, out);
    out += op;
    print(c[1], right, out);
  };
  switch (f.kind()) {
    case Formula::Kind::kTrue: out += "true"; break;
    case Formula::Kind::kFalse: out += "false"; break;
    case Formula::Kind::kAtom: out += "p" + std::to_string(f.atom_index()); break;
    case Formula::Kind::kNot: out += '!'; print(c[0], 5, out); break;
    case Formula::Kind::kAnd: binary(" & ", 4, 5); break;
    case Formula::Kind::kOr: binary(" | ", 3, 4); break;
    case Formula::Kind::kImplies: binary(" -> ", 3, 2); break;
    case Formula::Kind::kIff: binary(" <-> ", 1, 2); break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text, const Universe& u) { return Parser(text, u).parse(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

bool satisfies(int model, const Formula& f) {
  const auto& c = f.children();
  switch (f.kind()) {
    case Formula::Kind::kTrue: return true;
    case Formula::Kind::kFalse: return false;
    case Formula::Kind::kAtom: return (model >> f.atom_index()) & 1;
    case Formula::Kind::kNot: return !satisfies(model, c[0]);
    case Formula::Kind::kAnd: return satisfies(model, c[0]) && satisfies(model, c[1]);
    case Formula::Kind::kOr: return satisfies(model, c[0]) || satisfies(model, c[1]);
    case Formula::Kind::kImplies: return !satisfies(model, c[0]) || satisfies(model, c[1]);
    case Formula::Kind::kIff: return satisfies(model, c[0]) == satisfies(model, c[1]);
  }
  return false;
}

ModelSet models_of(const Formula& f, const Universe& u) {
  const int atoms = u.has_atoms() ? u.atom_count() : 0;
  if (f.max_atom() >= atoms) throw Error("formula mentions an atom outside the universe");
  ModelSet s;
  for (int m = 0; m < u.size(); ++m) {
    if (satisfies(m, f)) s |= ModelSet::singleton(m);
  }
  return s;
}

namespace {

// A conjunction of literals: atoms in `care` are fixed to their bit in `value`.
struct Cube {
  unsigned care;
  unsigned value;

  ModelSet models(int universe_size) const {
    ModelSet s;
    for (int m = 0; m < universe_size; ++m) {
      if ((static_cast<unsigned>(m) & care) == value) s |= ModelSet::singleton(m);
    }
    return s;
  }
};

}  // namespace

std::string render_model_set(ModelSet s, const Universe& u) {
  if (!u.has_atoms()) throw Error("formula rendering needs an atom universe");
  if (!u.contains(s)) throw Error("model set outside universe");
  if (s.empty()) return "false";
  if (s == u.all()) return "true";
  const int k = u.atom_count();

  std::vector<Cube> implicants;
  for (unsigned care = 0; care < (1U << k); ++care) {
    for (unsigned value = 0; value < (1U << k); ++value) {
      if ((value & ~care) != 0) continue;
      Cube c{care, value};
      if (c.models(u.size()).subset_of(s)) implicants.push_back(c);
    }
  }
  std::vector<Cube> primes;
  for (const auto& c : implicants) {
    const bool dominated = std::any_of(implicants.begin(), implicants.end(), [&](const Cube& d) {
      return d.care != c.care && (d.care & ~c.care) == 0 && (c.value & d.care) == d.value;
    });
    if (!dominated) primes.push_back(c);
  }

  std::vector<Cube> cover;
  ModelSet uncovered = s;
  while (!uncovered.empty()) {
    const Cube* best = nullptr;
    int best_gain = 0;
    for (const auto& c : primes) {
      const int gain = (c.models(u.size()) & uncovered).size();
      if (gain > best_gain ||
          (gain == best_gain && best && std::popcount(c.care) < std::popcount(best->care))) {
        best = &c;
        best_gain = gain;
      }
    }
    cover.push_back(*best);
    uncovered = uncovered - best->models(u.size());
  }
  std::sort(cover.begin(), cover.end(), [](const Cube& a, const Cube& b) {
    return a.care != b.care ? a.care < b.care : a.value < b.value;
  });

  std::string out;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i) out += " | ";
    bool first = true;
    for (int a = 0; a < k; ++a) {
      if (!((cover[i].care >> a) & 1U)) continue;
      if (!first) out += " & ";
      if (!((cover[i].value >> a) & 1U)) out += '!';
      out += "p" + std::to_string(a);
      first = false;
    }
  }
  return out;
}

}  // namespace prefhist
