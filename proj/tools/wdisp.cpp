#include <iostream>

#include "wdisp/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wdisp::cli::run(args, std::cout, std::cerr, std::cin);
}
