#include "linex_cli/commands.hpp"

#include <iostream>

int main(int argc, char **argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return linex::cli::run(args, std::cout, std::cerr);
}
