#include <iostream>

#include "hbspace/cli.hpp"

int main(int argc, char** argv) { return hbspace::cli_main(argc, argv, std::cout, std::cerr); }
