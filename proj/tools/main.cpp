#include "eeinv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eeinv::cli_main(argc, argv, std::cout, std::cerr); }
