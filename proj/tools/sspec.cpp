#include <iostream>

#include "sspec/cli.hpp"

int main(int argc, char** argv) { return sspec::cli::run(argc, argv, std::cout, std::cerr); }
