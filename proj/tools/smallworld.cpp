#include <iostream>
#include <string>
#include <vector>

#include "smallworld/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return smallworld::run_command(args, std::cout, std::cerr);
}
