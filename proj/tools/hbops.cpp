#include "hbops/cli_io.hpp"

#include <iostream>

int main(int argc, char** argv) { return hbops::io::run_cli(argc, argv, std::cout, std::cerr); }
