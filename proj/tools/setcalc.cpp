#include <iostream>

#include "setcalc/cli.hpp"

int main(int argc, char** argv) { return setcalc::cli::run(argc, argv, std::cout, std::cerr); }
