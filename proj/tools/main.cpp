#include <iostream>

#include "maskaug/cli.hpp"

int main(int argc, char** argv) { return maskaug::cli::run(argc, argv, std::cout, std::cerr); }
