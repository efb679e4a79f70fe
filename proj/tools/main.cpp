#include <iostream>
#include <string>
#include <vector>

#include "dexkin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dexkin::cli::run(args, std::cout, std::cerr);
}
