#include <iostream>
#include <string>
#include <vector>

#include "qlink/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qlink::cli::run(args, std::cout, std::cerr);
}
