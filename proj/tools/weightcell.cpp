#include <iostream>

#include "weightcell_cli.hpp"

int main(int argc, char** argv) { return weightcell::cli::run_cli(argc, argv, std::cout, std::cerr); }
