// Process entry point: hand the split argv to the in-process driver.

#include <iostream>
#include <string>
#include <vector>

#include "csgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return csgen::run_cli(std::move(args), std::cout, std::cerr);
}
