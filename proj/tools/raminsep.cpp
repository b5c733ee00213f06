#include <iostream>

#include "raminsep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return raminsep::run(args, std::cout, std::cerr);
}
