#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zeta2::cli::run(argc, argv, std::cout, std::cerr); }
