#include <iostream>

#include "skh/cli.hpp"

int main(int argc, char** argv) { return skh::cli::run(argc, argv, std::cout, std::cerr); }
