#include <iostream>

#include "maf/commands.hpp"

int main(int argc, char** argv) { return maf::run_cli(argc, argv, std::cout, std::cerr); }
