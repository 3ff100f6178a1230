#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return acp::cli::run(argc, argv, std::cout, std::cerr); }
