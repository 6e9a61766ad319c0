#include <iostream>

#include "lhmine/cli.hpp"

int main(int argc, char** argv) {
  return lhmine::cli::run(argc, argv, std::cout, std::cerr);
}
