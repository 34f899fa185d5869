#include <iostream>

#include "jetreg/cli.hpp"

int main(int argc, char** argv) { return jetreg::cli::run(argc, argv, std::cout, std::cerr); }
