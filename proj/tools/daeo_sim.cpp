/**
 * @file daeo_sim.cpp
 * @brief Command-line driver. See daeo/cli.hpp for flags and exit codes.
 */
#include <iostream>

#include "daeo/cli.hpp"

int main(int argc, char **argv) {
  return daeo::run_cli(argc, argv, std::cout, std::cerr);
}
