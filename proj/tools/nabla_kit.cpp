#include <iostream>

#include "cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nabla::cli::run_command(args, std::cin, std::cout, std::cerr);
}
