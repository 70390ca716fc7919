#include <iostream>
#include <string>
#include <vector>

#include "khavinson/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return khav::cli::run(args, std::cout, std::cerr);
}
