#include <iostream>
#include <string>
#include <vector>

#include "fracprop/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fracprop::run_cli(args, std::cout, std::cerr);
}
