#include <iostream>

#include "airylab/cli/commands.hpp"

int main(int argc, char** argv) { return airylab::cli::run_cli(argc, argv, std::cout, std::cerr); }
