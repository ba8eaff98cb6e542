#include <iostream>
#include <string>
#include <vector>

#include "howe/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return howe::cli::run(args, std::cout, std::cerr);
}
