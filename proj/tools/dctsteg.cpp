#include <iostream>
#include <string>
#include <vector>

#include "dctsteg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dctsteg::cli::run(args, std::cout, std::cerr);
}
