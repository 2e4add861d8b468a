#include "prefhist/postulates.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "prefhist/representation.h"

namespace prefhist {

bool SuiteReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

const PropertyResult& SuiteReport::at(std::string_view id) const {
  for (const auto& r : results) {
    if (r.id == id) return r;
  }
  throw Error("no property '" + std::string(id) + "' in report");
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream out;
  for (const auto& r : report.results) {
    out << r.id << (r.passed ? " PASS" : " FAIL");
    if (!r.passed) out << ' ' << r.witness;
    out << '\n';
  }
  return out.str();
}

namespace {

struct Obs {
  std::string label;
  ModelSet models;
};

using Seq = std::vector<Obs>;

Seq concat(std::initializer_list<const Seq*> parts) {
  Seq out;
  for (const Seq* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::string show(const Seq& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].label;
  }
  return out + ">";
}

class Suite {
 public:
  Suite(const GeneralRanking& r, const std::vector<Formula>& pool, int max_length)
      : ranking_(r), max_length_(max_length) {
    const auto& u = r.universe();
    if (max_length < 0) throw Error("maximum sequence length must be non-negative");
    if (max_length > r.max_length()) {
      throw Error("maximum sequence length " + std::to_string(max_length) + " exceeds ranking bound " +
                  std::to_string(r.max_length()));
    }
    for (const auto& f : pool) {
      const auto m = models_of(f, u);
      if (m.empty()) throw Error("inconsistent pool formula '" + to_string(f) + "'");
      pool_.push_back({to_string(f), m});
      formulas_.push_back(f);
    }
    for (int len = 0; len <= max_length; ++len) extend_sequences(len);
  }

  SuiteReport run() {
    SuiteReport report;
    report.results.push_back(theory());
    report.results.push_back(syntax_independence());
    report.results.push_back(implied_observation());
    report.results.push_back(true_elimination());
    report.results.push_back(disjunction_intersection());
    report.results.push_back(disjunction_trichotomy());
    report.results.push_back(success());
    report.results.push_back(conjunction());
    report.results.push_back(expansion());
    report.results.push_back(consistency());
    return report;
  }

 private:
  void extend_sequences(int len) {
    if (len == 0) {
      by_length_.push_back({Seq{}});
      return;
    }
    std::vector<Seq> next;
    for (const auto& s : by_length_[len - 1]) {
      for (const auto& o : pool_) {
        auto t = s;
        t.push_back(o);
        next.push_back(std::move(t));
      }
    }
    by_length_.push_back(std::move(next));
  }

  // Pool sequences of length at most len.
  template <typename Fn>
  void sequences(int len, Fn&& fn) const {
    for (int l = 0; l <= std::min(len, max_length_); ++l) {
      for (const auto& s : by_length_[l]) fn(s);
    }
  }

  // Pairs (s, t) of pool sequences with |s| + |t| <= budget.
  template <typename Fn>
  void contexts(int budget, Fn&& fn) const {
    if (budget < 0) return;
    sequences(budget, [&](const Seq& s) {
      sequences(budget - static_cast<int>(s.size()), [&](const Seq& t) { fn(s, t); });
    });
  }

  ModelSet update(const Seq& s) {
    std::vector<std::uint64_t> key;
    key.reserve(s.size());
    for (const auto& o : s) key.push_back(o.models.bits());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ObservationSequence obs;
    for (const auto& o : s) obs.push_back(o.models);
    const ModelSet result = update_general(obs, ranking_);
    cache_.emplace(std::move(key), result);
    return result;
  }

  static void fail(PropertyResult& r, const std::string& witness) {
    if (r.passed) r.witness = witness;
    r.passed = false;
  }

  static PropertyResult start(const char* id, const char* statement) {
    PropertyResult r;
    r.id = id;
    r.statement = statement;
    return r;
  }

  std::vector<Obs> disjunctions() const {
    std::vector<Obs> out;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      for (std::size_t j = 0; j < pool_.size(); ++j) {
        out.push_back({"(" + pool_[i].label + ") | (" + pool_[j].label + ")",
                       pool_[i].models | pool_[j].models});
      }
    }
    return out;
  }

  PropertyResult theory() {
    auto r = start(kPropertyIds[0], "[s] is a set of models of the universe");
    sequences(max_length_, [&](const Seq& s) {
      ++r.instances;
      const ModelSet v = update(s);
      if (!ranking_.universe().contains(v)) fail(r, "s=" + show(s) + " : " + to_string(v));
    });
    return r;
  }

  PropertyResult syntax_independence() {
    auto r = start(kPropertyIds[1], "[s a t] = [s a' t] for equivalent a, a'");
    const auto& u = ranking_.universe();
    contexts(max_length_ - 1, [&](const Seq& s, const Seq& t) {
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        const Formula rewritten =
            Formula::conjunction(Formula::negation(Formula::negation(formulas_[i])), Formula::constant(true));
        const Seq a{pool_[i]};
        const Seq a2{{to_string(rewritten), models_of(rewritten, u)}};
        ++r.instances;
        const ModelSet x = update(concat({&s, &a, &t})), y = update(concat({&s, &a2, &t}));
        if (x != y) {
          fail(r, "s=" + show(s) + " a=" + a[0].label + " t=" + show(t) + " : " + to_string(x) +
                      " vs " + to_string(y));
        }
      }
    });
    return r;
  }

  PropertyResult implied_observation() {
    auto r = start(kPropertyIds[2], "b |= a implies [s a b t] = [s b t] = [s b a t]");
    // b ranges over the pool and the consistent conjunctions a & c.
    contexts(max_length_ - 2, [&](const Seq& s, const Seq& t) {
      for (const auto& alpha : pool_) {
        std::vector<Obs> betas;
        for (const auto& c : pool_) {
          if (c.models.subset_of(alpha.models)) betas.push_back(c);
          const ModelSet both = alpha.models & c.models;
          if (!both.empty()) betas.push_back({"(" + alpha.label + ") & (" + c.label + ")", both});
        }
        const Seq a{alpha};
        for (const auto& beta : betas) {
          const Seq b{beta};
          ++r.instances;
          const ModelSet x = update(concat({&s, &a, &b, &t}));
          const ModelSet y = update(concat({&s, &b, &t}));
          const ModelSet z = update(concat({&s, &b, &a, &t}));
          if (x != y || y != z) {
            fail(r, "s=" + show(s) + " a=" + alpha.label + " b=" + beta.label + " t=" + show(t) + " : " +
                        to_string(x) + " " + to_string(y) + " " + to_string(z));
          }
        }
      }
    });
    return r;
  }

  PropertyResult true_elimination() {
    auto r = start(kPropertyIds[3], "[s true] = [s]");
    const Seq top{{"true", ranking_.universe().all()}};
    sequences(max_length_ - 1, [&](const Seq& s) {
      ++r.instances;
      const ModelSet x = update(concat({&s, &top})), y = update(s);
      if (x != y) fail(r, "s=" + show(s) + " : " + to_string(x) + " vs " + to_string(y));
    });
    return r;
  }

  // A formula true after both s a t and s b t is true after s (a|b) t: in
  // models, [s (a|b) t] lies inside [s a t] | [s b t].
  PropertyResult disjunction_intersection() {
    auto r = start(kPropertyIds[4], "[s (a|b) t] inside [s a t] | [s b t]");
    const auto ors = disjunctions();
    contexts(max_length_ - 1, [&](const Seq& s, const Seq& t) {
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        for (std::size_t j = 0; j < pool_.size(); ++j) {
          const Seq a{pool_[i]}, b{pool_[j]}, ab{ors[i * pool_.size() + j]};
          ++r.instances;
          const ModelSet either = update(concat({&s, &a, &t})) | update(concat({&s, &b, &t}));
          const ModelSet joined = update(concat({&s, &ab, &t}));
          if (!joined.subset_of(either)) {
            fail(r, "s=" + show(s) + " a=" + a[0].label + " b=" + b[0].label + " t=" + show(t) + " : " +
                        not_inside_text(joined, either));
          }
        }
      }
    });
    return r;
  }

  // The theory after s (a|b) t is one of the two theories or their
  // intersection; in models the last case is the union.
  PropertyResult disjunction_trichotomy() {
    auto r = start(kPropertyIds[5], "[s (a|b) t] is [s a t], [s b t] or their union");
    const auto ors = disjunctions();
    contexts(max_length_ - 1, [&](const Seq& s, const Seq& t) {
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        for (std::size_t j = 0; j < pool_.size(); ++j) {
          const Seq a{pool_[i]}, b{pool_[j]}, ab{ors[i * pool_.size() + j]};
          ++r.instances;
          const ModelSet x = update(concat({&s, &a, &t})), y = update(concat({&s, &b, &t}));
          const ModelSet joined = update(concat({&s, &ab, &t}));
          if (joined != x && joined != y && joined != (x | y)) {
            fail(r, "s=" + show(s) + " a=" + a[0].label + " b=" + b[0].label + " t=" + show(t) + " : " +
                        to_string(joined) + " vs " + to_string(x) + ", " + to_string(y));
          }
        }
      }
    });
    return r;
  }

  PropertyResult success() {
    auto r = start(kPropertyIds[6], "[s a] inside models(a)");
    sequences(max_length_ - 1, [&](const Seq& s) {
      for (const auto& alpha : pool_) {
        const Seq a{alpha};
        ++r.instances;
        const ModelSet v = update(concat({&s, &a}));
        if (!v.subset_of(alpha.models)) {
          fail(r, "s=" + show(s) + " a=" + alpha.label + " : " + not_inside_text(v, alpha.models));
        }
      }
    });
    return r;
  }

  PropertyResult conjunction() {
    auto r = start(kPropertyIds[7], "[s a] meets b implies [s a b] = [s (a&b)] = [s a] & b");
    sequences(max_length_ - 2, [&](const Seq& s) {
      for (const auto& alpha : pool_) {
        const Seq a{alpha};
        const ModelSet after = update(concat({&s, &a}));
        for (const auto& beta : pool_) {
          if (!after.intersects(beta.models)) continue;
          ++r.instances;
          const std::string where = "s=" + show(s) + " a=" + alpha.label + " b=" + beta.label + " : ";
          const ModelSet both = alpha.models & beta.models;
          if (both.empty()) {
            fail(r, where + "a & b inconsistent although [s a] meets b");
            continue;
          }
          const Seq b{beta}, ab{{"(" + alpha.label + ") & (" + beta.label + ")", both}};
          const ModelSet x = update(concat({&s, &a, &b})), y = update(concat({&s, &ab}));
          const ModelSet z = after & beta.models;
          if (x != y || y != z) fail(r, where + to_string(x) + " " + to_string(y) + " " + to_string(z));
        }
      }
    });
    return r;
  }

  PropertyResult expansion() {
    auto r = start(kPropertyIds[8], "[s] meets a implies [s a] = [s] & a");
    sequences(max_length_ - 1, [&](const Seq& s) {
      const ModelSet before = update(s);
      for (const auto& alpha : pool_) {
        if (!before.intersects(alpha.models)) continue;
        ++r.instances;
        const Seq a{alpha};
        const ModelSet x = update(concat({&s, &a}));
        if (x != (before & alpha.models)) {
          fail(r, "s=" + show(s) + " a=" + alpha.label + " : " + to_string(x) + " vs " +
                      to_string(before & alpha.models));
        }
      }
    });
    return r;
  }

  PropertyResult consistency() {
    auto r = start(kPropertyIds[9], "[s] is non-empty");
    sequences(max_length_, [&](const Seq& s) {
      ++r.instances;
      if (update(s).empty()) fail(r, "s=" + show(s));
    });
    return r;
  }

  static std::string not_inside_text(ModelSet a, ModelSet b) {
    return to_string(a) + " not inside " + to_string(b);
  }

  const GeneralRanking& ranking_;
  int max_length_;
  std::vector<Obs> pool_;
  std::vector<Formula> formulas_;
  std::vector<std::vector<Seq>> by_length_;
  std::map<std::vector<std::uint64_t>, ModelSet> cache_;
};

}  // namespace

SuiteReport check_postulate_suite(const GeneralRanking& r, const std::vector<Formula>& pool,
                                  int max_length) {
  return Suite(r, pool, max_length).run();
}

std::optional<U8Witness> u8_violation(const FixedRanking& r) {
  if (r.dimension() != 2) throw Error("dimension mismatch: the (U8) search needs n=2");
  const OperatorTable t = table_from_ranking(r);
  const int k = t.shape().set_count();
  for (int a = 1; a <= k; ++a) {
    for (int a2 = 1; a2 <= k; ++a2) {
      for (int b = 1; b <= k; ++b) {
        const ModelSet sa(static_cast<std::uint64_t>(a)), sa2(static_cast<std::uint64_t>(a2)),
            sb(static_cast<std::uint64_t>(b));
        const std::array<ModelSet, 2> joined_seq{sa | sa2, sb}, left{sa, sb}, right{sa2, sb};
        const ModelSet joined = t.at(joined_seq);
        const ModelSet separate = t.at(left) | t.at(right);
        if (joined != separate) return U8Witness{r, sa, sa2, sb, joined, separate};
      }
    }
  }
  return std::nullopt;
}

std::optional<U8Witness> find_km_u8_violation(const Universe& u) {
  if (u.size() > 4) throw Error("the (U8) search is limited to universes of at most 4 models");
  std::optional<U8Witness> found;
  FixedRanking r(2, u);
  for_each_weak_order(r.tuple_count(), [&](std::span<const Rank> ranks) {
    std::copy(ranks.begin(), ranks.end(), r.mutable_ranks().begin());
    found = u8_violation(r);
    return !found.has_value();
  });
  return found;
}

EpistemicDemo epistemic_state_demo(const Universe& u) {
  if (!u.has_atoms() || u.atom_count() < 2) throw Error("the demo needs at least two atoms");
  constexpr int kLength = 3;
  // Model 1 makes only p0 true, model 2 only p1. <1,2> is the unique best
  // history of length 2; every history of length 1 is better still.
  GeneralRanking r(u, kLength);
  for (const auto& h : r.histories()) {
    Rank rank = 0;
    if (h.size() == 2) rank = (h == History{1, 2}) ? 1 : 2;
    if (h.size() == 3) rank = 3;
    r.set_rank(h, rank);
  }
  const ModelSet phi = models_of(Formula::atom(0), u);
  const ModelSet psi = models_of(Formula::atom(1), u);
  const ModelSet not_both = u.all() - (phi & psi);
  const ObservationSequence forward{phi, psi, not_both}, backward{psi, phi, not_both};
  const ObservationSequence forward_prefix{phi, psi}, backward_prefix{psi, phi};
  const auto canonical = GeneralRanking::canonical(u, kLength);
  return EpistemicDemo{r,
                       update_general(forward, r),
                       update_general(backward, r),
                       update_general(forward_prefix, r),
                       update_general(backward_prefix, r),
                       update_general(forward, canonical),
                       update_general(backward, canonical)};
}

std::string to_text(const EpistemicDemo& d) {
  const auto& u = d.ranking.universe();
  std::ostringstream out;
  auto line = [&](const char* seq, ModelSet v) {
    out << seq << " => " << to_string(v) << "  " << render_model_set(v, u) << '\n';
  };
  line("[p0, p1]", d.forward_prefix);
  line("[p1, p0]", d.backward_prefix);
  line("[p0, p1, !p0 | !p1]", d.forward);
  line("[p1, p0, !p0 | !p1]", d.backward);
  line("canonical [p0, p1, !p0 | !p1]", d.canonical_forward);
  line("canonical [p1, p0, !p0 | !p1]", d.canonical_backward);
  return out.str();
}

}  // namespace prefhist
