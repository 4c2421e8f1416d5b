#include <iostream>

#include "bing/commands.hpp"

int main(int argc, char** argv) { return bing::run_cli(argc, argv, std::cout, std::cerr); }
