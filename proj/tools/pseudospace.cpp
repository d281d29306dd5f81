#include <iostream>
#include <string>
#include <vector>

#include "pseudospace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pseudospace::run_cli(args, std::cout, std::cerr);
}
