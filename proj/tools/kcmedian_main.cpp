#include <iostream>

#include "kcmedian_cli/commands.hpp"

int main(int argc, char** argv) { return kcmedian::cli::run_cli(argc, argv, std::cout, std::cerr); }
