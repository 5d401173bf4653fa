#include <iostream>
#include <string>
#include <vector>

#include "tsaug/cli.hpp"

int main(int argc, char** argv) {
  return tsaug::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
