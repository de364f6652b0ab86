#include <iostream>

#include "pqg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pqg::run_cli(args, std::cout, std::cerr);
}
