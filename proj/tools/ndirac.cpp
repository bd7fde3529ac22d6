#include <iostream>

#include "ndirac/app.hpp"

int main(int argc, char** argv) { return ndirac::run_cli(argc, argv, std::cout, std::cerr); }
