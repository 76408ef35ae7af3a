#include <iostream>

#include "trilie/cli.hpp"

int main(int argc, char** argv) { return trilie::cli::run(argc, argv, std::cout, std::cerr); }
