#include <iostream>

#include "shadowlab/cli/app.hpp"

int main(int argc, char** argv) { return shadowlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
