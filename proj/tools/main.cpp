#include <iostream>

#include "dynflow/cli.hpp"

int main(int argc, char** argv) {
  return dynflow::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
