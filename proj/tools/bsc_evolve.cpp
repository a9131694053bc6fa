#include <iostream>

#include "bsc/cli/commands.hpp"

int main(int argc, char** argv) { return bsc::cli::run_cli(argc, argv, std::cout, std::cerr); }
