#include <string>
#include <vector>

#include "pmodal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pmodal::cli::run(args);
}
