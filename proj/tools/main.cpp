#include <iostream>
#include <string>
#include <vector>

#include "chorefair/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chorefair::cli_dispatch(args, std::cout, std::cerr);
}
