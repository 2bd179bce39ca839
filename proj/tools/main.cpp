#include <iostream>

#include "braidhopf/cli.hpp"

int main(int argc, char** argv) {
  return braidhopf::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
