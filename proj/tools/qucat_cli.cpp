#include <iostream>

#include "qucat/cli.hpp"

int main(int argc, char** argv) { return qucat::cli::run(argc, argv, std::cout, std::cin); }
