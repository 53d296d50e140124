#include <iostream>
#include <string>
#include <vector>

#include "tjurina/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tjurina::run_cli(args, std::cout, std::cerr);
}
