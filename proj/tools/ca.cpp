#include <iostream>

#include "cabm/cli.hpp"

int main(int argc, char** argv) { return cabm::cli::run(argc, argv, std::cout, std::cerr); }
