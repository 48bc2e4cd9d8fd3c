#include "splitci/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return splitci::cli::run(argc, argv, std::cout, std::cerr);
}
