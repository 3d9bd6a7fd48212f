#include <iostream>

#include "zfree/cli.hpp"

int main(int argc, char** argv) {
  return zfree::run_cli(argc, argv, std::cout, std::cerr);
}
