#include <iostream>

#include "symgf_cli.hpp"

int main(int argc, char** argv) { return symgf::cli::run(argc, argv, std::cout, std::cerr); }
