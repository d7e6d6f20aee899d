#include <iostream>
#include <string>
#include <vector>

#include "lqi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lqi::cli::run(args, std::cout, std::cerr);
}
