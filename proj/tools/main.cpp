#include <iostream>
#include <string>
#include <vector>

#include "hypersparse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hypersparse::dispatch(args, std::cin, std::cout, std::cerr);
}
