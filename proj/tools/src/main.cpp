#include <iostream>

#include "grpkit_cli/commands.hpp"

int main(int argc, char** argv) { return grpkit::cli::run(argc, argv, std::cout, std::cerr); }
