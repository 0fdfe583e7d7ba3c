#include <iostream>

#include "nullitylab/cli.hpp"

int main(int argc, char** argv) { return nullitylab::run_cli(argc, argv, std::cout, std::cerr); }
