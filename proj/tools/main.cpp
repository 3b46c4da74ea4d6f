#include "wls/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return wls::run_cli(argc, argv, std::cout, std::cerr);
}
