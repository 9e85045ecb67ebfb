#include <iostream>
#include <string>
#include <vector>

#include "roguewave/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return roguewave::run_cli(args, std::cout, std::cerr);
}
