#include <iostream>

#include "cwkirch/commands.hpp"

int main(int argc, char** argv) { return cwk::cli::run(argc, argv, std::cout, std::cerr); }
