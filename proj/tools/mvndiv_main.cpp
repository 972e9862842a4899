#include <iostream>
#include <string>
#include <vector>

#include "mvndiv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mvndiv::run(args, std::cout, std::cerr);
}
