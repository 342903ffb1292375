#include <iostream>

#include "hmfan/cli.hpp"

int main(int argc, char** argv) { return hmfan::cli::run(argc, argv, std::cout, std::cerr); }
