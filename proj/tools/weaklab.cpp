#include <iostream>

#include "weaklab/cli.hpp"

int main(int argc, char** argv) { return weaklab::cli::cli_main(argc, argv, std::cout, std::cerr); }
