#include "wom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wom::run_cli(argc, argv, std::cout, std::cerr); }
