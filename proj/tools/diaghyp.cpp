#include <iostream>
#include <string>
#include <vector>

#include "diaghyp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diaghyp::run_command(args, std::cout, std::cerr);
}
