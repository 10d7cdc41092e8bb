#include <string>
#include <vector>

#include "photonsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return photonsim::run_cli(args);
}
