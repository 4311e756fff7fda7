#include <iostream>

#include "divuq/cli.hpp"

int main(int argc, char** argv) { return divuq::cli_main(argc, argv, std::cout, std::cerr); }
