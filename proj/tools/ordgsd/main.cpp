#include <iostream>

#include "ordgsd/cli.hpp"

int main(int argc, char** argv) {
  return ordgsd::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
