#include "boxdos/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return boxdos::cli::run(argc, argv, std::cout, std::cerr); }
