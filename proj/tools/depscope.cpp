#include <iostream>

#include "depscope/cli.hpp"

int main(int argc, char** argv) {
  return depscope::run_cli(argc, argv, std::cout, std::cerr);
}
