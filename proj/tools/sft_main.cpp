#include "sft/cli.hpp"

int main(int argc, char** argv) {
  return sft::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
