#include <iostream>

#include "intricacy/cli.hpp"

int main(int argc, char** argv) { return intricacy::cli::main(argc, argv, std::cout, std::cerr); }
