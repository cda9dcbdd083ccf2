#include <iostream>

#include "workbench.hpp"

int main(int argc, char** argv) { return hyperdot::cli::run(argc, argv, std::cout, std::cerr); }
