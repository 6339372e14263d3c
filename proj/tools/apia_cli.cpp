#include <iostream>

#include "apia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return apia::apia_main(args, std::cin, std::cout, std::cerr);
}
