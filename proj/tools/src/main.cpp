#include <iostream>
#include <string>
#include <vector>

#include "cogmap_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cogmap::cli::run(args, std::cout, std::cerr);
}
