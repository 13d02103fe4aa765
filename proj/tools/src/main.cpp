#include <iostream>
#include <string>
#include <vector>

#include "lyapctl/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lyapctl::run(args, std::cout, std::cerr);
}
