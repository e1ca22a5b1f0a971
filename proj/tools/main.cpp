#include <iostream>

#include "ccr/cli.hpp"

int main(int argc, char** argv) {
  return ccr::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
