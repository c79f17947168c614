#include <iostream>
#include <string>
#include <vector>

#include "cousinforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cousinforge::cli_run(args, std::cout, std::cerr);
}
