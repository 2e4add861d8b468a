#include <iostream>
#include <string>
#include <vector>

#include "prefhist/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prefhist::cli::run(args, std::cin, std::cout, std::cerr);
}
