#include <iostream>
#include <string>
#include <vector>

#include "dp3/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dp3::cli::run(args, std::cout, std::cerr);
}
