#include "prefhist/relations.h"

#include <algorithm>
#include <deque>
#include <ostream>

namespace prefhist {

std::string to_string(RelationVariant v) {
  switch (v) {
    case RelationVariant::kTwoDTight: return "2d-tight";
    case RelationVariant::kTwoDWide: return "2d-wide";
    case RelationVariant::kThreeDTight: return "3d-tight";
    case RelationVariant::kThreeDWide: return "3d-wide";
    case RelationVariant::kPatch: return "patch";
  }
  return "?";
}

RelationVariant parse_relation_variant(std::string_view name) {
  for (auto v : {RelationVariant::kTwoDTight, RelationVariant::kTwoDWide,
                 RelationVariant::kThreeDTight, RelationVariant::kThreeDWide,
                 RelationVariant::kPatch}) {
    if (name == to_string(v)) return v;
  }
  throw Error("unknown relation variant '" + std::string(name) + "'");
}

namespace {

void check_patch_args(std::span<const ModelSet> a, std::span<const ModelSet> a_prime) {
  if (a.size() != a_prime.size()) throw Error("patch arguments differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_prime[i].subset_of(a[i])) {
      throw Error("patch needs A'_i inside A_i at coordinate " + std::to_string(i));
    }
  }
}

}  // namespace

Patch make_patch(std::span<const ModelSet> a, std::span<const ModelSet> a_prime, PatchMode mode) {
  check_patch_args(a, a_prime);
  Patch patch;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a_prime[i] == a[i]) continue;
    SetSequence b(a.begin(), a.end());
    b[i] = mode == PatchMode::kTight ? a[i] - a_prime[i] : a[i];
    patch.push_back(std::move(b));
  }
  return patch;
}

std::vector<Patch> relaxed_patches(std::span<const ModelSet> a, std::span<const ModelSet> a_prime) {
  check_patch_args(a, a_prime);
  std::vector<Patch> out{Patch{}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a_prime[i] == a[i]) continue;
    const ModelSet required = a[i] - a_prime[i];
    // Supersets of `required` inside a[i]: add any subset of a_prime[i].
    std::vector<ModelSet> choices;
    const std::uint64_t free = a_prime[i].bits();
    for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
      choices.push_back(required | ModelSet(sub));
      if (sub == 0) break;
    }
    std::vector<Patch> next;
    for (const auto& p : out) {
      for (ModelSet c : choices) {
        Patch q = p;
        SetSequence b(a.begin(), a.end());
        b[i] = c;
        q.push_back(std::move(b));
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

Relation::Relation(OperatorShape shape, RelationVariant variant)
    : shape_(std::move(shape)), variant_(variant) {
  if (shape_.sequence_count() > (std::size_t{1} << 14)) {
    throw Error("budget exceeded: relation over " + std::to_string(shape_.sequence_count()) +
                " set sequences");
  }
  rows_.assign(shape_.sequence_count(),
               std::vector<std::uint64_t>((shape_.sequence_count() + 63) / 64, 0));
}

std::size_t Relation::edge_count() const {
  std::size_t c = 0;
  for (const auto& row : rows_) {
    for (auto w : row) c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < node_count(); ++i) {
    for (std::size_t j = 0; j < node_count(); ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> Relation::shortest_path(std::size_t from, std::size_t to) const {
  const std::size_t none = node_count();
  std::vector<std::size_t> parent(node_count(), none);
  std::deque<std::size_t> queue;
  // The start is not marked visited up front so that a cycle back to it
  // (from == to) is found.
  queue.push_back(from);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < node_count(); ++v) {
      if (!has_edge(u, v) || parent[v] != none) continue;
      parent[v] = u;
      if (v == to) {
        std::vector<std::size_t> path{to};
        for (std::size_t w = u;; w = parent[w]) {
          path.push_back(w);
          if (w == from) break;
        }
        return {path.rbegin(), path.rend()};
      }
      queue.push_back(v);
    }
  }
  return {};
}

Relation transitive_closure(const Relation& r) {
  Relation c = r;
  const std::size_t n = c.node_count();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& row_k = c.rows_[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.has_edge(i, k)) continue;
      auto& row_i = c.rows_[i];
      for (std::size_t w = 0; w < row_i.size(); ++w) row_i[w] |= row_k[w];
    }
  }
  return c;
}

namespace {

bool superset_everywhere(std::span<const ModelSet> big, std::span<const ModelSet> small) {
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (!small[i].subset_of(big[i])) return false;
  }
  return true;
}

// Coordinates where the sequences differ; -1 if none, -2 if more than one.
int single_difference(std::span<const ModelSet> a, std::span<const ModelSet> b) {
  int diff = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (diff != -1) return -2;
    diff = static_cast<int>(i);
  }
  return diff;
}

class Builder {
 public:
  Builder(const OperatorTable& table, RelationVariant variant, PatchMode patches)
      : table_(table), shape_(table.shape()), variant_(variant), patches_(patches),
        rel_(table.shape(), variant) {
    for (std::size_t i = 0; i < shape_.sequence_count(); ++i) nodes_.push_back(shape_.sequence_at(i));
  }

  Relation build() {
    const int n = shape_.dimension();
    switch (variant_) {
      case RelationVariant::kTwoDTight:
      case RelationVariant::kTwoDWide:
        if (n != 2) throw Error("dimension mismatch: " + to_string(variant_) + " needs n=2");
        break;
      case RelationVariant::kThreeDTight:
      case RelationVariant::kThreeDWide:
        if (n != 3) throw Error("dimension mismatch: " + to_string(variant_) + " needs n=3");
        break;
      case RelationVariant::kPatch:
        break;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (i != j && holds(nodes_[i], nodes_[j])) rel_.add_edge(i, j);
      }
    }
    return std::move(rel_);
  }

 private:
  ModelSet val(std::span<const ModelSet> s) const { return table_.at(s); }

  SetSequence with(std::span<const ModelSet> s, std::size_t i, ModelSet v) const {
    SetSequence out(s.begin(), s.end());
    out[i] = v;
    return out;
  }

  bool holds(const SetSequence& from, const SetSequence& to) const {
    if (variant_ == RelationVariant::kPatch) return patch_case(from, to);
    const bool wide = variant_ == RelationVariant::kTwoDWide || variant_ == RelationVariant::kThreeDWide;
    return wide ? wide_case(from, to) : tight_case(from, to);
  }

  // Tight variants: the sequences agree except at coordinate i.
  //   last coordinate:  [.. (C | C')] meets C               => (.., C) R (.., C')
  //   earlier i:        [.. (S | S') ..] != [.. S' ..]      => (.. S ..) R (.. S' ..)
  bool tight_case(const SetSequence& from, const SetSequence& to) const {
    const int i = single_difference(from, to);
    if (i < 0) return false;
    const std::size_t last = from.size() - 1;
    const auto joined = with(from, i, from[i] | to[i]);
    if (static_cast<std::size_t>(i) == last) return val(joined).intersects(from[last]);
    return val(joined) != val(to);
  }

  // Wide variants:
  //   from contains to everywhere                              => from R to
  //   to = from with C grown to C2, [.. C2] meets C             => from R to
  //   to = from with S grown to S2, some S' with S | S' = S2
  //        and [.. S2 ..] != [.. S' ..]                           => from R to
  bool wide_case(const SetSequence& from, const SetSequence& to) const {
    if (superset_everywhere(from, to)) return true;
    const int i = single_difference(from, to);
    if (i < 0 || !from[i].subset_of(to[i])) return false;
    const std::size_t last = from.size() - 1;
    if (static_cast<std::size_t>(i) == last) return val(to).intersects(from[last]);
    const ModelSet grown = to[i];
    const ModelSet required = grown - from[i];
    const std::uint64_t free = from[i].bits();
    for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
      const ModelSet other = required | ModelSet(sub);
      if (!other.empty() && val(with(from, i, other)) != val(to)) return true;
      if (sub == 0) break;
    }
    return false;
  }

  // from = (A'_1 .. A'_{n-1}, C'), to = (A_1 .. A_{n-1}, C).
  bool patch_case(const SetSequence& from, const SetSequence& to) const {
    const std::size_t last = from.size() - 1;
    // Containment: from is a superset everywhere.
    if (superset_everywhere(from, to)) return true;
    const std::span<const ModelSet> pf(from.data(), last), pt(to.data(), last);
    const bool same_prefix = std::equal(pf.begin(), pf.end(), pt.begin());
    // Last coordinate: same prefix, C' inside C, [A.. C] meets C'.
    if (same_prefix) {
      return from[last].subset_of(to[last]) && val(to).intersects(from[last]);
    }
    // Patch: C' = C, prefix of from inside prefix of to.
    if (from[last] != to[last] || !superset_everywhere(pt, pf)) return false;
    if (patches_ == PatchMode::kTight) return patch_witness(make_patch(pt, pf), to);
    for (const auto& p : relaxed_patches(pt, pf)) {
      if (patch_witness(p, to)) return true;
    }
    return false;
  }

  // Either the intersection of the pieces' outputs escapes [A.. C], or
  // [A.. C] escapes the union of the pieces' outputs.
  bool patch_witness(const Patch& prefixes, const SetSequence& to) const {
    const ModelSet whole = val(to);
    ModelSet meet = shape_.universe().all();
    ModelSet join;
    for (const auto& prefix : prefixes) {
      auto piece = prefix;
      piece.push_back(to.back());
      const ModelSet v = val(piece);
      meet &= v;
      join |= v;
    }
    return !meet.subset_of(whole) || !whole.subset_of(join);
  }

  const OperatorTable& table_;
  const OperatorShape& shape_;
  RelationVariant variant_;
  PatchMode patches_;
  Relation rel_;
  std::vector<SetSequence> nodes_;
};

}  // namespace

Relation build_relation(const OperatorTable& table, RelationVariant variant, PatchMode patches) {
  return Builder(table, variant, patches).build();
}

void write_edges(std::ostream& out, const Relation& r) {
  for (const auto& [i, j] : r.edges()) {
    out << to_string(r.shape().sequence_at(i)) << " -> " << to_string(r.shape().sequence_at(j)) << '\n';
  }
}

}  // namespace prefhist
