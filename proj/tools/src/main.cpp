#include <iostream>

#include "dpgcli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dpgcli::run_app(args, std::cout, std::cerr);
}
