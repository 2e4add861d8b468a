// Command-line front end. Exit codes: 0 success or verdict true, 1 verdict
// false, 2 input error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prefhist::cli {

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kInputError = 2;

// args excludes the program name. "-" as a file argument reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace prefhist::cli
