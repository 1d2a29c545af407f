#include <iostream>
#include <string>
#include <vector>

#include "chainfountain/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return chainfountain::cli::run(args, std::cout, std::cerr);
}
