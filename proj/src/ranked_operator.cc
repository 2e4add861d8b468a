#include "prefhist/ranked_operator.h"

#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "product_index.h"
#include "text_util.h"

namespace prefhist {

std::string to_string(std::span<const ModelSet> seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ';';
    out += to_string(seq[i]);
  }
  return out;
}

OperatorShape::OperatorShape(int dimension, Universe universe, std::size_t budget)
    : n_(dimension), universe_(universe) {
  if (dimension < 1) throw Error("operator dimension must be at least 1");
  if (universe.size() > 16) throw Error("operator universes are limited to 16 models");
  set_count_ = (1 << universe.size()) - 1;
  sequence_count_ = 1;
  tuple_count_ = 1;
  for (int i = 0; i < dimension; ++i) {
    sequence_count_ *= static_cast<std::size_t>(set_count_);
    tuple_count_ *= static_cast<std::size_t>(universe.size());
    if (sequence_count_ > budget) {
      throw Error("budget exceeded: (2^" + std::to_string(universe.size()) + "-1)^" +
                  std::to_string(dimension) + " set sequences exceed " + std::to_string(budget));
    }
  }
}

std::size_t OperatorShape::index_of(std::span<const ModelSet> seq) const {
  if (seq.size() != static_cast<std::size_t>(n_)) {
    throw Error("set sequence has length " + std::to_string(seq.size()) + ", expected " +
                std::to_string(n_));
  }
  std::size_t idx = 0;
  for (ModelSet s : seq) {
    if (s.empty()) throw Error("set sequences may not contain the empty set");
    if (!universe_.contains(s)) throw Error("set " + to_string(s) + " outside universe");
    idx = idx * static_cast<std::size_t>(set_count_) + static_cast<std::size_t>(s.bits() - 1);
  }
  return idx;
}

SetSequence OperatorShape::sequence_at(std::size_t index) const {
  SetSequence seq(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    seq[i] = ModelSet(index % static_cast<std::size_t>(set_count_) + 1);
    index /= static_cast<std::size_t>(set_count_);
  }
  return seq;
}

std::vector<int> OperatorShape::tuple_at(std::size_t index) const {
  std::vector<int> t(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % static_cast<std::size_t>(universe_.size()));
    index /= static_cast<std::size_t>(universe_.size());
  }
  return t;
}

std::size_t OperatorShape::tuple_index(std::span<const int> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(n_)) throw Error("tuple has wrong length");
  std::size_t idx = 0;
  for (int m : tuple) {
    if (m < 0 || m >= universe_.size()) throw Error("tuple model outside universe");
    idx = idx * static_cast<std::size_t>(universe_.size()) + static_cast<std::size_t>(m);
  }
  return idx;
}

FixedRanking::FixedRanking(int dimension, Universe universe)
    : n_(dimension), universe_(universe) {
  if (dimension < 1) throw Error("ranking dimension must be at least 1");
  std::size_t count = 1;
  for (int i = 0; i < dimension; ++i) {
    count *= static_cast<std::size_t>(universe.size());
    if (count > (std::size_t{1} << 24)) throw Error("too many tuples for an explicit ranking");
  }
  ranks_.assign(count, 0);
}

FixedRanking FixedRanking::from_function(int dimension, Universe universe,
                                         const std::function<Rank(std::span<const int>)>& fn) {
  FixedRanking r(dimension, universe);
  std::vector<int> t(dimension, 0);
  for (std::size_t k = 0; k < r.ranks_.size(); ++k) {
    std::size_t rest = k;
    for (int i = dimension - 1; i >= 0; --i) {
      t[i] = static_cast<int>(rest % static_cast<std::size_t>(universe.size()));
      rest /= static_cast<std::size_t>(universe.size());
    }
    r.ranks_[k] = fn(t);
  }
  return r;
}

FixedRanking FixedRanking::canonical(int dimension, Universe universe) {
  return from_function(dimension, universe, [](std::span<const int> t) {
    Rank changes = 0;
    for (std::size_t i = 1; i < t.size(); ++i) changes += t[i] != t[i - 1];
    return changes;
  });
}

namespace {

std::size_t tuple_offset(std::span<const int> tuple, int n, const Universe& u) {
  if (tuple.size() != static_cast<std::size_t>(n)) throw Error("tuple has wrong length");
  std::size_t idx = 0;
  for (int m : tuple) {
    if (m < 0 || m >= u.size()) throw Error("tuple model outside universe");
    idx = idx * static_cast<std::size_t>(u.size()) + static_cast<std::size_t>(m);
  }
  return idx;
}

void check_sequence(const FixedRanking& r, std::span<const ModelSet> seq) {
  if (seq.size() != static_cast<std::size_t>(r.dimension())) {
    throw Error("dimension mismatch: ranking has n=" + std::to_string(r.dimension()) +
                ", sequence has length " + std::to_string(seq.size()));
  }
  for (ModelSet s : seq) {
    if (s.empty()) throw Error("set sequences may not contain the empty set");
    if (!r.universe().contains(s)) throw Error("set " + to_string(s) + " outside universe");
  }
}

// Visits every tuple of the product of seq.
template <typename Fn>
void for_each_tuple(std::span<const ModelSet> seq, Fn&& fn) {
  std::vector<std::vector<int>> members;
  for (ModelSet s : seq) members.push_back(s.members());
  std::vector<std::size_t> pos(seq.size(), 0);
  std::vector<int> t(seq.size());
  while (true) {
    for (std::size_t i = 0; i < seq.size(); ++i) t[i] = members[i][pos[i]];
    fn(std::as_const(t));
    std::size_t i = seq.size();
    while (i > 0 && pos[i - 1] + 1 == members[i - 1].size()) pos[--i] = 0;
    if (i == 0) return;
    ++pos[i - 1];
  }
}

}  // namespace

Rank FixedRanking::rank(std::span<const int> tuple) const {
  return ranks_[tuple_offset(tuple, n_, universe_)];
}

void FixedRanking::set_rank(std::span<const int> tuple, Rank r) {
  ranks_[tuple_offset(tuple, n_, universe_)] = r;
}

OperatorTable::OperatorTable(OperatorShape shape) : shape_(std::move(shape)) {
  entries_.reserve(shape_.sequence_count());
  for (std::size_t i = 0; i < shape_.sequence_count(); ++i) {
    entries_.push_back(shape_.sequence_at(i).back());
  }
}

void OperatorTable::set(std::span<const ModelSet> seq, ModelSet value) {
  set_entry(shape_.index_of(seq), value);
}

void OperatorTable::set_entry(std::size_t index, ModelSet value) {
  if (value.empty()) throw Error("operator entries must be non-empty");
  if (!universe().contains(value)) throw Error("operator entry outside universe");
  entries_.at(index) = value;
}

ModelSet update_from_ranking(const FixedRanking& r, std::span<const ModelSet> seq) {
  check_sequence(r, seq);
  Rank best = std::numeric_limits<Rank>::max();
  ModelSet sel;
  for_each_tuple(seq, [&](const std::vector<int>& t) {
    const Rank rk = r.rank(t);
    if (rk < best) {
      best = rk;
      sel = ModelSet();
    }
    if (rk == best) sel |= ModelSet::singleton(t.back());
  });
  return sel;
}

Rank rank_of_set_sequence(const FixedRanking& r, std::span<const ModelSet> seq) {
  check_sequence(r, seq);
  Rank best = std::numeric_limits<Rank>::max();
  for_each_tuple(seq, [&](const std::vector<int>& t) { best = std::min(best, r.rank(t)); });
  return best;
}

OperatorTable table_from_ranking(const FixedRanking& r, std::size_t budget) {
  OperatorShape shape(r.dimension(), r.universe(), budget);
  detail::ProductIndex index(shape);
  OperatorTable t(shape);
  std::vector<ModelSet> out(shape.sequence_count());
  index.induced<Rank>(r.ranks(), out);
  for (std::size_t i = 0; i < out.size(); ++i) t.set_entry(i, out[i]);
  return t;
}

namespace {

struct HeaderInfo {
  int n;
  Universe universe;
};

HeaderInfo dimension_header(std::string_view body, const std::string& where) {
  const auto header = text::parse_header(body);
  if (!header || !header->count("n")) throw Error(where + "expected header 'n=<n> universe=<m>'");
  return {static_cast<int>(header->at("n")), text::universe_from_header(*header)};
}

}  // namespace

OperatorTable read_operator_table(std::istream& in) {
  std::optional<OperatorTable> table;
  std::vector<bool> seen;
  std::size_t count = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = text::strip_comment(line);
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto arrow = body.find("=>");
    try {
      if (arrow == std::string_view::npos) {
        if (table) throw Error("expected a row '<sets> => <set>'");
        auto h = dimension_header(body, "");
        table.emplace(OperatorShape(h.n, h.universe));
        seen.assign(table->size(), false);
        continue;
      }
      if (!table) throw Error("row before header");
      SetSequence seq;
      for (auto part : text::split(body.substr(0, arrow), ';')) {
        seq.push_back(parse_model_set(part, table->universe()));
      }
      const auto idx = table->shape().index_of(seq);
      if (seen[idx]) throw Error("duplicate row " + to_string(seq));
      seen[idx] = true;
      ++count;
      table->set_entry(idx, parse_model_set(body.substr(arrow + 2), table->universe()));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  if (!table) throw Error("missing table header");
  if (count != table->size()) {
    throw Error("table is not total: " + std::to_string(count) + " of " +
                std::to_string(table->size()) + " rows given");
  }
  return *std::move(table);
}

void write_operator_table(std::ostream& out, const OperatorTable& t) {
  out << "n=" << t.dimension() << ' ' << t.universe().header() << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << to_string(t.shape().sequence_at(i)) << " => " << to_string(t.entry(i)) << '\n';
  }
}

FixedRanking read_fixed_ranking(std::istream& in) {
  std::optional<FixedRanking> r;
  std::vector<bool> seen;
  std::size_t count = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = text::strip_comment(line);
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    try {
      if (body.rfind("h:", 0) != 0) {
        if (r) throw Error("header after ranking entries");
        auto h = dimension_header(body, "");
        r.emplace(h.n, h.universe);
        seen.assign(r->tuple_count(), false);
        continue;
      }
      if (!r) throw Error("ranking entry before header");
      const auto arrow = body.find("=>");
      if (arrow == std::string_view::npos) throw Error("missing '=>'");
      std::vector<int> t;
      for (auto tok : text::split_ws(body.substr(2, arrow - 2))) {
        t.push_back(static_cast<int>(text::require_int(tok, "model")));
      }
      const auto rank = text::require_int(body.substr(arrow + 2), "rank");
      if (rank < 0 || rank > std::numeric_limits<Rank>::max()) throw Error("rank out of range");
      const auto idx = tuple_offset(t, r->dimension(), r->universe());
      if (seen[idx]) throw Error("duplicate history " + to_string(t));
      seen[idx] = true;
      ++count;
      r->set_rank(t, static_cast<Rank>(rank));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  if (!r) throw Error("missing ranking header");
  if (count != r->tuple_count()) {
    throw Error("ranking is not total: " + std::to_string(count) + " of " +
                std::to_string(r->tuple_count()) + " histories given");
  }
  return *std::move(r);
}

void write_fixed_ranking(std::ostream& out, const FixedRanking& r) {
  out << "n=" << r.dimension() << ' ' << r.universe().header() << '\n';
  std::vector<int> t(r.dimension(), 0);
  const int m = r.universe().size();
  for (std::size_t k = 0; k < r.tuple_count(); ++k) {
    out << "h:";
    for (int v : t) out << ' ' << v;
    out << " => " << r.ranks()[k] << '\n';
    int i = r.dimension() - 1;
    while (i >= 0 && t[i] == m - 1) t[i--] = 0;
    if (i >= 0) ++t[i];
  }
}

}  // namespace prefhist
