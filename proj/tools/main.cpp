#include <iostream>

#include "sharpsphere/cli.hpp"

int main(int argc, char** argv) { return sharpsphere::run_cli(argc, argv, std::cout, std::cerr); }
