#include <iostream>

#include "cslow/cli.hpp"

int main(int argc, char** argv) { return cslow::cli::run_main(argc, argv, std::cout, std::cerr); }
