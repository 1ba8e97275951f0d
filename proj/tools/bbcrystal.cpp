#include <iostream>

#include "bbcrystal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bbcrystal::run_cli(args, std::cout, std::cerr);
}
