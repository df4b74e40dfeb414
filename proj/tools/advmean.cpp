#include <iostream>

#include "advmean/cli.hpp"

int main(int argc, char** argv) { return advmean::cli::run(argc, argv, std::cout, std::cerr); }
