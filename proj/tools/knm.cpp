#include "knm/cli.hpp"

int main(int argc, char** argv) {
  return knm::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
