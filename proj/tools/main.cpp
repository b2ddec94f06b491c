#include <iostream>

#include "chipletfp/cli.hpp"

int main(int argc, char** argv) { return chipletfp::run_cli(argc, argv, std::cout, std::cerr); }
