#include <iostream>

#include "fuzzproc/cli.hpp"

int main(int argc, char** argv) {
  return fuzzproc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
