#include "stiff/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stiff::cli::run_cli(argc, argv, std::cout, std::cerr); }
