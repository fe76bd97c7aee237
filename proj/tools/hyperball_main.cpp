#include <iostream>
#include <string>
#include <vector>

#include "hyperball/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperball::dispatch(args, std::cout, std::cerr);
}
