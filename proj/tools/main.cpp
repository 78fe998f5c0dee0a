#include <iostream>

#include "eiscong/cli.hpp"

int main(int argc, char** argv) { return eiscong::run_cli(argc, argv, std::cout, std::cerr); }
