#include <iostream>

#include "hyperpdl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hyperpdl::run_cli(args, std::cout, std::cerr);
}
