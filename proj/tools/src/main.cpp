#include <iostream>

#include "skdv_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return skdv::cli::run(args, std::cout, std::cerr);
}
