#include <iostream>

#include "stablemix/cli.hpp"

int main(int argc, char** argv) { return stablemix::cli::run(argc, argv, std::cout, std::cerr); }
