#include <iostream>

#include "factexp/cli.hpp"

int main(int argc, char** argv) { return factexp::cli::run(argc, argv, std::cout, std::cerr); }
