#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  return crowdbench::cli::cli_main(std::vector<std::string>(argv, argv + argc));
}
