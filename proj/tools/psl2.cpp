#include <iostream>

#include "psl2/cli.hpp"

int main(int argc, char** argv) { return psl2::cli::run(argc, argv, std::cout, std::cerr); }
