#include <iostream>

#include "vrei/cli.hpp"

int main(int argc, char** argv) { return vrei::main_entry(argc, argv, std::cout, std::cerr); }
