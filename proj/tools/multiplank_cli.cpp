#include "mplank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mplank::run_cli(argc, argv, std::cout, std::cerr); }
