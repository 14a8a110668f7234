#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "fgw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const bool interactive = ::isatty(STDIN_FILENO) && ::isatty(STDOUT_FILENO);
  return fgw::run_cli(args, {std::cin, std::cout, std::cerr, interactive});
}
