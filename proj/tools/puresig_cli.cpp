#include <iostream>

#include "puresig/cli.hpp"

int main(int argc, char** argv) { return puresig::run(argc, argv, std::cout, std::cerr); }
