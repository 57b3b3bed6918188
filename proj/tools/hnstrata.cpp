#include "hnstrata/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hnstrata::run_cli(argc, argv, std::cout, std::cerr); }
