#include <iostream>

#include "nlwalk/cli.hpp"

int main(int argc, char** argv) { return nlwalk::run_cli(argc, argv, std::cout, std::cerr); }
