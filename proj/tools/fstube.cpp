#include <iostream>

#include "fstube/cli.hpp"

int main(int argc, char** argv) {
  return fstube::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
