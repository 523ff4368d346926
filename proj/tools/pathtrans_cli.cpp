#include "pathtrans/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pathtrans::run_cli(argc, argv, std::cout, std::cerr); }
