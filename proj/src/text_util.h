// Small line-oriented parsing helpers shared by the file readers.

#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefhist/model_set.h"

namespace prefhist::text {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Drops a trailing "# ..." comment and surrounding whitespace.
inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return trim(line);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<long long> to_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline long long require_int(std::string_view s, std::string_view what) {
  auto v = to_int(s);
  if (!v) throw Error("expected integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  return *v;
}

// Parses a header line made of whitespace-separated key=value tokens.
// Returns nullopt when the line does not look like a header.
inline std::optional<std::map<std::string, long long>> parse_header(std::string_view line) {
  std::map<std::string, long long> out;
  for (auto tok : split_ws(line)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    out[std::string(tok.substr(0, eq))] = require_int(tok.substr(eq + 1), tok.substr(0, eq));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// Builds the universe named by an "atoms=k" or "universe=m" header entry.
inline Universe universe_from_header(const std::map<std::string, long long>& h) {
  const bool a = h.count("atoms") != 0;
  const bool u = h.count("universe") != 0;
  if (a == u) throw Error("header must give exactly one of atoms=<k> or universe=<m>");
  return a ? Universe::atoms(static_cast<int>(h.at("atoms")))
           : Universe::abstract(static_cast<int>(h.at("universe")));
}

}  // namespace prefhist::text
