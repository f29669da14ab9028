#include <iostream>

#include "catsl2/cli.hpp"

int main(int argc, char** argv) { return catsl2::run_cli(argc, argv, std::cout, std::cerr); }
