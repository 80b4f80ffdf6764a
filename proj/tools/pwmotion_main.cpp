#include <string>
#include <vector>

#include "pwmotion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pwmotion::run_cli(args);
}
