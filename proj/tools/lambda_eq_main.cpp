#include <iostream>
#include <string>
#include <vector>

#include "leq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return leq::cli_main(args, std::cout, std::cerr);
}
