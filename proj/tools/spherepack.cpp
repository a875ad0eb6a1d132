#include <iostream>
#include <string>
#include <vector>

#include "spherepack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spherepack::cli::run(args, std::cout, std::cerr);
}
