#include <iostream>

#include "bpslab/cli.hpp"

int main(int argc, char** argv) {
  return bpslab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
