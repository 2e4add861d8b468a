#include "prefhist/history.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>

#include "text_util.h"

namespace prefhist {

bool explains(std::span<const int> history, std::span<const ModelSet> observations) {
  // Earliest-match greedy: staying on a position is allowed, so each
  // observation takes the first position at or after the previous one.
  std::size_t pos = 0;
  for (ModelSet obs : observations) {
    while (pos < history.size() && !obs.contains(history[pos])) ++pos;
    if (pos == history.size()) return false;
  }
  return true;
}

bool is_subhistory(std::span<const int> sub, std::span<const int> history) {
  if (sub.size() >= history.size()) return false;
  std::size_t pos = 0;
  for (int m : sub) {
    while (pos < history.size() && history[pos] != m) ++pos;
    if (pos == history.size()) return false;
    ++pos;
  }
  return true;
}

std::string to_string(std::span<const int> history) {
  std::string out = "<";
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(history[i]);
  }
  return out + ">";
}

namespace {

constexpr std::size_t kMaxHistories = std::size_t{1} << 24;

// Calls fn for every history of exactly `length` models, lexicographically.
template <typename Fn>
void for_each_of_length(int universe_size, int length, bool skip_repeats, Fn&& fn) {
  History h(length, 0);
  while (true) {
    bool ok = true;
    if (skip_repeats) {
      for (int i = 1; i < length && ok; ++i) ok = h[i] != h[i - 1];
    }
    if (ok) fn(std::as_const(h));
    int i = length - 1;
    while (i >= 0 && h[i] == universe_size - 1) h[i--] = 0;
    if (i < 0) return;
    ++h[i];
  }
}

}  // namespace

GeneralRanking::GeneralRanking(Universe universe, int max_length)
    : universe_(universe), max_length_(max_length) {
  if (max_length < 1) throw Error("ranking length bound must be at least 1");
  std::size_t total = 0;
  std::size_t layer = 1;
  offsets_.push_back(0);
  for (int len = 1; len <= max_length; ++len) {
    layer *= static_cast<std::size_t>(universe.size());
    total += layer;
    if (total > kMaxHistories) throw Error("too many histories for an explicit ranking");
    offsets_.push_back(total);
  }
  ranks_.assign(total, 0);
}

GeneralRanking GeneralRanking::canonical(Universe universe, int max_length) {
  GeneralRanking r(universe, max_length);
  for (int len = 1; len <= max_length; ++len) {
    for_each_of_length(universe.size(), len, false, [&](const History& h) {
      Rank changes = 0;
      for (std::size_t i = 1; i < h.size(); ++i) changes += h[i] != h[i - 1];
      r.set_rank(h, static_cast<Rank>(len) * static_cast<Rank>(max_length) + changes);
    });
  }
  return r;
}

std::size_t GeneralRanking::index_of(std::span<const int> history) const {
  const auto len = history.size();
  if (len < 1 || len > static_cast<std::size_t>(max_length_)) {
    throw Error("history length " + std::to_string(len) + " outside ranking bound " +
                std::to_string(max_length_));
  }
  std::size_t code = 0;
  for (int m : history) {
    if (m < 0 || m >= universe_.size()) throw Error("history model outside universe");
    code = code * static_cast<std::size_t>(universe_.size()) + static_cast<std::size_t>(m);
  }
  return offsets_[len - 1] + code;
}

std::vector<History> GeneralRanking::histories() const {
  std::vector<History> out;
  out.reserve(ranks_.size());
  for (int len = 1; len <= max_length_; ++len) {
    for_each_of_length(universe_.size(), len, false, [&](const History& h) { out.push_back(h); });
  }
  return out;
}

std::optional<std::pair<History, History>> GeneralRanking::find_subhistory_violation() const {
  for (const auto& h : histories()) {
    if (h.size() < 2) continue;
    const Rank rh = rank(h);
    for (std::size_t drop = 0; drop < h.size(); ++drop) {
      History sub;
      sub.reserve(h.size() - 1);
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (i != drop) sub.push_back(h[i]);
      }
      if (rank(sub) >= rh) return std::make_pair(sub, h);
    }
  }
  return std::nullopt;
}

GeneralRanking make_valid_general_ranking(const Universe& u, int max_length, std::uint64_t seed) {
  GeneralRanking r(u, max_length);
  std::mt19937_64 rng(seed);
  const Rank spread = static_cast<Rank>(2 * max_length);
  std::uniform_int_distribution<Rank> jitter(0, spread);
  for (int len = 1; len <= max_length; ++len) {
    for_each_of_length(u.size(), len, false, [&](const History& h) {
      Rank base = 0;
      if (len > 1) {
        History sub(h.size() - 1);
        for (std::size_t drop = 0; drop < h.size(); ++drop) {
          std::size_t k = 0;
          for (std::size_t i = 0; i < h.size(); ++i) {
            if (i != drop) sub[k++] = h[i];
          }
          base = std::max(base, r.rank(sub) + 1);
        }
      }
      r.set_rank(h, base + jitter(rng));
    });
  }
  return r;
}

std::vector<History> preferred_histories(std::span<const ModelSet> observations,
                                         const GeneralRanking& r) {
  const int bound = std::max<int>(1, static_cast<int>(observations.size()));
  if (bound > r.max_length()) {
    throw Error("observation sequence of length " + std::to_string(observations.size()) +
                " exceeds ranking bound " + std::to_string(r.max_length()));
  }
  for (ModelSet obs : observations) {
    if (obs.empty()) throw Error("observations must be consistent (non-empty)");
    if (!r.universe().contains(obs)) throw Error("observation outside universe");
  }
  std::vector<History> best;
  Rank best_rank = std::numeric_limits<Rank>::max();
  for (int len = 1; len <= bound; ++len) {
    for_each_of_length(r.universe().size(), len, true, [&](const History& h) {
      if (!explains(h, observations)) return;
      const Rank rk = r.rank(h);
      if (rk < best_rank) {
        best_rank = rk;
        best.clear();
      }
      if (rk == best_rank) best.push_back(h);
    });
  }
  return best;
}

ModelSet update_general(std::span<const ModelSet> observations, const GeneralRanking& r) {
  ModelSet out;
  for (const auto& h : preferred_histories(observations, r)) out |= ModelSet::singleton(h.back());
  return out;
}

GeneralRanking read_general_ranking(std::istream& in) {
  std::optional<GeneralRanking> r;
  std::set<History> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = text::strip_comment(line);
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (body.rfind("h:", 0) != 0) {
      if (r) throw Error(where + "header after ranking entries");
      const auto header = text::parse_header(body);
      if (!header || !header->count("maxlen")) throw Error(where + "expected header with maxlen=<L>");
      r.emplace(text::universe_from_header(*header), static_cast<int>(header->at("maxlen")));
      continue;
    }
    if (!r) throw Error(where + "ranking entry before header");
    const auto arrow = body.find("=>");
    if (arrow == std::string_view::npos) throw Error(where + "missing '=>'");
    History h;
    for (auto tok : text::split_ws(body.substr(2, arrow - 2))) {
      h.push_back(static_cast<int>(text::require_int(tok, "model")));
    }
    const auto rank = text::require_int(body.substr(arrow + 2), "rank");
    if (rank < 0 || rank > std::numeric_limits<Rank>::max()) throw Error(where + "rank out of range");
    try {
      r->set_rank(h, static_cast<Rank>(rank));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    if (!seen.insert(h).second) throw Error(where + "duplicate history " + to_string(h));
  }
  if (!r) throw Error("missing ranking header");
  if (seen.size() != r->history_count()) {
    throw Error("ranking is not total: " + std::to_string(seen.size()) + " of " +
                std::to_string(r->history_count()) + " histories given");
  }
  return *std::move(r);
}

void write_general_ranking(std::ostream& out, const GeneralRanking& r) {
  out << r.universe().header() << " maxlen=" << r.max_length() << '\n';
  for (const auto& h : r.histories()) {
    out << "h:";
    for (int m : h) out << ' ' << m;
    out << " => " << r.rank(h) << '\n';
  }
}

}  // namespace prefhist
