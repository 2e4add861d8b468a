#include "prefhist/representation.h"

#include <algorithm>
#include <array>
#include <queue>
#include <sstream>

#include "product_index.h"

namespace prefhist {

bool CheckReport::violates(std::string_view condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

void CheckReport::add(Violation v) {
  verdict = false;
  ++violation_count;
  if (violations.size() < kMaxListed) violations.push_back(std::move(v));
}

std::string to_text(const CheckReport& report) {
  std::ostringstream out;
  out << "theorem " << report.theorem << ": " << (report.verdict ? "PASS" : "FAIL");
  if (!report.verdict) out << " (" << report.violation_count << " violations)";
  out << '\n';
  for (const auto& v : report.violations) {
    out << "violation " << v.condition;
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      out << (i ? " , " : " ") << to_string(v.witness[i]);
    }
    if (!v.detail.empty()) out << " : " << v.detail;
    out << '\n';
    if (!v.chain.empty()) {
      out << "  chain";
      for (std::size_t i = 0; i < v.chain.size(); ++i) out << (i ? " -> " : " ") << to_string(v.chain[i]);
      out << '\n';
    }
  }
  return out.str();
}

namespace {

// Calls fn for every non-empty subset of `s`, including s itself.
template <typename Fn>
void for_each_nonempty_subset(ModelSet s, Fn&& fn) {
  const std::uint64_t all = s.bits();
  for (std::uint64_t sub = all; sub != 0; sub = (sub - 1) & all) fn(ModelSet(sub));
}

// Calls fn for every sequence that is a non-empty subset of seq coordinatewise.
template <typename Fn>
void for_each_subsequence(const SetSequence& seq, Fn&& fn) {
  SetSequence cur(seq.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == seq.size()) {
      fn(std::as_const(cur));
      return;
    }
    for_each_nonempty_subset(seq[i], [&](ModelSet s) {
      cur[i] = s;
      self(self, i + 1);
    });
  };
  rec(rec, 0);
}

std::string not_inside(ModelSet a, ModelSet b) {
  return to_string(a) + " not inside " + to_string(b);
}

class Checker {
 public:
  Checker(const OperatorTable& table, std::string theorem) : table_(table) {
    report_.theorem = std::move(theorem);
  }

  ModelSet val(std::span<const ModelSet> s) const { return table_.at(s); }

  std::size_t node_count() const { return table_.shape().sequence_count(); }
  SetSequence node(std::size_t i) const { return table_.shape().sequence_at(i); }

  void inclusion() {
    for (std::size_t i = 0; i < node_count(); ++i) {
      const auto s = node(i);
      const ModelSet v = table_.entry(i);
      if (!v.subset_of(s.back())) {
        report_.add({"inclusion", {s}, not_inside(v, s.back()), {}});
      }
    }
  }

  // [.. (S | S') ..] inside [.. S ..] | [.. S' ..] at coordinate `coord`.
  void union_condition(std::size_t coord, const std::string& id) {
    const int k = table_.shape().set_count();
    for (std::size_t i = 0; i < node_count(); ++i) {
      const auto s = node(i);
      for (int other = 1; other <= k; ++other) {
        auto s2 = s;
        s2[coord] = ModelSet(static_cast<std::uint64_t>(other));
        auto joined = s;
        joined[coord] = s[coord] | s2[coord];
        const ModelSet lhs = val(joined), rhs = val(s) | val(s2);
        if (!lhs.subset_of(rhs)) report_.add({id, {s, s2}, not_inside(lhs, rhs), {}});
      }
    }
  }

  // s R* s2, where s2 differs from s only at `coord`, implies
  // [s] inside [s with coordinate s[coord] | s2[coord]].
  void loop_condition(const Relation& base, const Relation& closure, std::size_t coord,
                      const std::string& id) {
    const int k = table_.shape().set_count();
    for (std::size_t i = 0; i < node_count(); ++i) {
      const auto s = node(i);
      for (int other = 1; other <= k; ++other) {
        auto s2 = s;
        s2[coord] = ModelSet(static_cast<std::uint64_t>(other));
        const auto j = table_.shape().index_of(s2);
        if (!closure.has_edge(i, j)) continue;
        auto joined = s;
        joined[coord] = s[coord] | s2[coord];
        const ModelSet lhs = val(s), rhs = val(joined);
        if (!lhs.subset_of(rhs)) report_.add({id, {s, s2}, not_inside(lhs, rhs), chain(base, i, j)});
      }
    }
  }

  std::vector<SetSequence> chain(const Relation& base, std::size_t from, std::size_t to) const {
    std::vector<SetSequence> out;
    for (auto n : base.shortest_path(from, to)) out.push_back(node(n));
    return out;
  }

  CheckReport& report() { return report_; }
  const OperatorTable& table() const { return table_; }

 private:
  const OperatorTable& table_;
  CheckReport report_;
};

}  // namespace

CheckReport check_theorem_2d(const OperatorTable& table, RelationVariant variant) {
  if (table.dimension() != 2) throw Error("dimension mismatch: two-dimensional check needs n=2");
  if (variant != RelationVariant::kTwoDTight && variant != RelationVariant::kTwoDWide) {
    throw Error("two-dimensional check needs a 2d relation variant");
  }
  const Relation base = build_relation(table, variant);
  const Relation closure = transitive_closure(base);
  Checker c(table, to_string(variant));
  c.inclusion();
  c.union_condition(0, "left-union");
  c.loop_condition(base, closure, 1, "right-loop");
  c.loop_condition(base, closure, 0, "left-loop");
  return std::move(c.report());
}

CheckReport check_suggested_3d(const OperatorTable& table, RelationVariant variant) {
  if (table.dimension() != 3) throw Error("dimension mismatch: three-dimensional check needs n=3");
  if (variant != RelationVariant::kThreeDTight && variant != RelationVariant::kThreeDWide) {
    throw Error("three-dimensional check needs a 3d relation variant");
  }
  const Relation base = build_relation(table, variant);
  const Relation closure = transitive_closure(base);
  Checker c(table, "suggested-" + std::string(variant == RelationVariant::kThreeDTight ? "tight" : "wide"));
  c.inclusion();
  c.union_condition(1, "middle-union");
  c.union_condition(0, "left-union");
  c.loop_condition(base, closure, 0, "left-loop");
  c.loop_condition(base, closure, 1, "middle-loop");
  c.loop_condition(base, closure, 2, "right-loop");
  return std::move(c.report());
}

CheckReport check_theorem_nd(const OperatorTable& table, PatchMode patches) {
  const Relation base = build_relation(table, RelationVariant::kPatch, patches);
  const Relation closure = transitive_closure(base);
  Checker c(table, patches == PatchMode::kTight ? "nd" : "nd-relaxed");
  c.inclusion();

  const auto& shape = table.shape();
  const std::size_t last = static_cast<std::size_t>(shape.dimension() - 1);
  // patch-cover: for every prefix A, sub-prefix A' and C,
  // [A.. C] inside [A'.. C] joined with the outputs of the patch pieces.
  for (std::size_t i = 0; i < shape.sequence_count(); ++i) {
    const auto s = shape.sequence_at(i);
    if (s.back() != shape.universe().all()) {
      // Prefixes are shared by every C; visit each prefix once via C = X.
      continue;
    }
    const SetSequence prefix(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(last));
    for_each_subsequence(prefix, [&](const SetSequence& sub) {
      if (sub == prefix) return;
      std::vector<Patch> family;
      if (patches == PatchMode::kTight) {
        family.push_back(make_patch(prefix, sub));
      } else {
        family = relaxed_patches(prefix, sub);
      }
      for (int cmask = 1; cmask <= shape.set_count(); ++cmask) {
        const ModelSet cset(static_cast<std::uint64_t>(cmask));
        auto whole = prefix;
        whole.push_back(cset);
        auto part = sub;
        part.push_back(cset);
        const ModelSet lhs = c.val(whole);
        for (const auto& p : family) {
          ModelSet rhs = c.val(part);
          std::vector<SetSequence> witness{whole, part};
          for (const auto& piece : p) {
            auto full = piece;
            full.push_back(cset);
            rhs |= c.val(full);
            witness.push_back(std::move(full));
          }
          if (!lhs.subset_of(rhs)) {
            c.report().add({"patch-cover", std::move(witness), not_inside(lhs, rhs), {}});
          }
        }
      }
    });
  }

  // loop: s' inside s everywhere and s' R* s imply [s'] inside [s].
  for (std::size_t j = 0; j < shape.sequence_count(); ++j) {
    const auto s = shape.sequence_at(j);
    const ModelSet rhs = table.entry(j);
    for_each_subsequence(s, [&](const SetSequence& sub) {
      const auto i = shape.index_of(sub);
      if (i == j || !closure.has_edge(i, j)) return;
      const ModelSet lhs = table.entry(i);
      if (!lhs.subset_of(rhs)) c.report().add({"loop", {sub, s}, not_inside(lhs, rhs), c.chain(base, i, j)});
    });
  }
  return std::move(c.report());
}

PreorderClasses preorder_classes(const OperatorTable& table) {
  const Relation base = build_relation(table, RelationVariant::kPatch);
  const Relation closure = transitive_closure(base);
  const std::size_t n = base.node_count();

  // Strongly connected components read off the closure: i and j share a
  // component iff each reaches the other. Components are named by their
  // smallest member.
  std::vector<std::size_t> leader(n);
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> component(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (component[i] != n) continue;
    component[i] = members.size();
    members.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (component[j] == n && closure.has_edge(i, j) && closure.has_edge(j, i)) {
        component[j] = component[i];
        members.back().push_back(j);
      }
    }
  }

  const std::size_t k = members.size();
  std::vector<std::vector<std::size_t>> succ(k);
  std::vector<std::size_t> indegree(k, 0);
  {
    std::vector<std::vector<bool>> seen(k, std::vector<bool>(k, false));
    for (const auto& [u, v] : base.edges()) {
      const auto cu = component[u], cv = component[v];
      if (cu == cv || seen[cu][cv]) continue;
      seen[cu][cv] = true;
      succ[cu].push_back(cv);
      ++indegree[cv];
    }
  }

  // Components are created in order of their smallest member, so the
  // component id doubles as the tie-break key.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t c = 0; c < k; ++c) {
    if (indegree[c] == 0) ready.push(c);
  }
  PreorderClasses out;
  out.class_of.assign(n, 0);
  while (!ready.empty()) {
    const auto c = ready.top();
    ready.pop();
    for (auto m : members[c]) out.class_of[m] = out.classes.size();
    out.classes.push_back(members[c]);
    for (auto d : succ[c]) {
      if (--indegree[d] == 0) ready.push(d);
    }
  }
  return out;
}

SynthesisError::SynthesisError(CheckReport report)
    : Error("table does not satisfy the representation conditions:\n" + to_text(report)),
      report_(std::move(report)) {}

FixedRanking synthesize_ranking(const OperatorTable& table) {
  auto report = check_theorem_nd(table);
  if (!report.verdict) throw SynthesisError(std::move(report));
  const auto classes = preorder_classes(table);
  const auto& shape = table.shape();
  FixedRanking r(shape.dimension(), shape.universe());
  SetSequence singletons(shape.dimension());
  for (std::size_t t = 0; t < shape.tuple_count(); ++t) {
    const auto tuple = shape.tuple_at(t);
    for (std::size_t i = 0; i < tuple.size(); ++i) singletons[i] = ModelSet::singleton(tuple[i]);
    r.set_rank(tuple, static_cast<Rank>(classes.class_of[shape.index_of(singletons)]));
  }
  return r;
}

void for_each_weak_order(std::size_t points, const std::function<bool(std::span<const Rank>)>& fn) {
  if (points == 0) return;
  std::vector<Rank> ranks(points, 0);
  std::vector<std::size_t> uses(points, 0);
  bool stop = false;
  // For each class count k, enumerate surjections onto {0..k-1}.
  for (std::size_t k = 1; k <= points && !stop; ++k) {
    std::size_t unused = k;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (stop) return;
      if (pos == points) {
        if (unused == 0 && !fn(ranks)) stop = true;
        return;
      }
      if (points - pos < unused) return;
      for (std::size_t v = 0; v < k && !stop; ++v) {
        ranks[pos] = static_cast<Rank>(v);
        if (uses[v]++ == 0) --unused;
        self(self, pos + 1);
        if (--uses[v] == 0) ++unused;
      }
    };
    rec(rec, 0);
  }
}

namespace {

void check_oracle_budget(const OperatorShape& shape, std::size_t budget) {
  if (shape.tuple_count() > budget) {
    throw Error("budget exceeded: oracle over " + std::to_string(shape.tuple_count()) +
                " histories exceeds " + std::to_string(budget));
  }
}

std::string table_key(std::span<const ModelSet> entries) {
  std::string key;
  key.reserve(entries.size() * 2);
  for (ModelSet e : entries) {
    key.push_back(static_cast<char>(e.bits() & 0xFF));
    key.push_back(static_cast<char>((e.bits() >> 8) & 0xFF));
  }
  return key;
}

}  // namespace

bool is_representable_bruteforce(const OperatorTable& table, std::size_t budget) {
  const auto& shape = table.shape();
  check_oracle_budget(shape, budget);
  const detail::ProductIndex index(shape);
  // Rows whose last set is a singleton are the same for every ranking, so
  // test the informative rows first.
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < shape.sequence_count(); ++s) {
    if (shape.sequence_at(s).back().size() > 1) order.push_back(s);
  }
  for (std::size_t s = 0; s < shape.sequence_count(); ++s) {
    if (shape.sequence_at(s).back().size() == 1) order.push_back(s);
  }
  bool found = false;
  for_each_weak_order(shape.tuple_count(), [&](std::span<const Rank> ranks) {
    for (auto s : order) {
      if (index.induced_row(ranks, s) != table.entry(s)) return true;
    }
    found = true;
    return false;
  });
  return found;
}

RepresentableSet::RepresentableSet(const OperatorShape& shape, std::size_t budget) : shape_(shape) {
  check_oracle_budget(shape, budget);
  const detail::ProductIndex index(shape);
  std::vector<ModelSet> entries(shape.sequence_count());
  for_each_weak_order(shape.tuple_count(), [&](std::span<const Rank> ranks) {
    ++rankings_;
    index.induced(ranks, std::span<ModelSet>(entries));
    tables_.insert(table_key(entries));
    return true;
  });
}

bool RepresentableSet::contains(const OperatorTable& table) const {
  if (!(table.shape() == shape_)) throw Error("oracle shape mismatch");
  return tables_.count(table_key(table.entries())) != 0;
}

}  // namespace prefhist
