#include <iostream>

#include "heavytail/cli.hpp"

int main(int argc, char** argv) { return heavytail::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
