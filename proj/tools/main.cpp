#include <iostream>

#include "floerss/cli.hpp"

int main(int argc, char** argv) { return floerss::cli::run(argc, argv, std::cout, std::cerr); }
