#include <iostream>

#include "opacity/cli.hpp"

int main(int argc, char** argv) {
  return opacity::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
