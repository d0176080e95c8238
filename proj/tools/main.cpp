#include <iostream>

#include "rrbpc/cli.hpp"

int main(int argc, char** argv) { return rrbpc::run(argc, argv, std::cout, std::cerr); }
