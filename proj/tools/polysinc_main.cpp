#include <iostream>

#include "polysinc/cli.hpp"

int main(int argc, char** argv) { return polysinc::run_cli(argc, argv, std::cout, std::cerr); }
