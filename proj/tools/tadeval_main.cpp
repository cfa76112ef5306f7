#include <iostream>

#include "tadeval/cli.hpp"

int main(int argc, char** argv) { return tadeval::run_cli(argc, argv, std::cout, std::cerr); }
