#include <iostream>

#include "mph/cli.hpp"

int main(int argc, char** argv) { return mph::run_cli(argc, argv, std::cout, std::cerr); }
