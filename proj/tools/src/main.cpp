#include <iostream>

#include "harmext_cli/cli.hpp"

int main(int argc, char** argv) { return harmext::cli::run(argc, argv, std::cout, std::cerr); }
